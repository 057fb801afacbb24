//! The unimodular change of coordinates between g-vectors at the word's seed
//! and string parameters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::rootdata::{RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Upsilon {
    pub word: Vec<usize>,
    /// Rows `k`, columns `l`; lower triangular with unit diagonal.
    pub matrix: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
    pub determinant: i64,
}

fn to_int(m: &[Vec<Rat>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|x| x.to_integer() as i64).collect()).collect()
}

/// `d_{k,l} = <s_{i_{l+1}} ... s_{i_k} w_{i_k}, h_{i_l}>` for `l <= k`.
pub fn upsilon_matrix(datum: &RootDatum, word: &[usize]) -> Result<Upsilon> {
    if !datum.is_reduced_word(word)? || word.len() != datum.positive_roots().len() {
        return Err(Error::NotLongestWord { word: word.to_vec() });
    }
    let n = word.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for k in 0..n {
        let mut mu: Weight = datum.fundamental_weight(word[k]);
        matrix[k][k] = 1;
        // walk l = k-1 down to 0, applying s_{i_{l+1}} before reading column l
        for l in (0..k).rev() {
            mu = datum.reflect_weight(word[l + 1], &mu)?;
            matrix[k][l] = mu.0[word[l] - 1];
        }
    }
    let r = linalg::to_rat_matrix(&matrix);
    let det = linalg::determinant(&r);
    if det * det != Rat::from_integer(1) {
        return Err(Error::TheoremViolation(format!("transfer matrix has determinant {det}")));
    }
    let inverse = to_int(&linalg::inverse(&r).expect("unimodular"));
    Ok(Upsilon { word: word.to_vec(), matrix, inverse, determinant: det.to_integer() as i64 })
}

fn row_times(a: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    (0..m.len()).map(|j| a.iter().zip(m).map(|(x, row)| x * row[j]).sum()).collect()
}

impl Upsilon {
    /// g-vector to string parameters: `a M`.
    pub fn apply(&self, a: &[i64]) -> Vec<i64> {
        row_times(a, &self.matrix)
    }

    /// String parameters to g-vector: `b M^{-1}`.
    pub fn invert(&self, b: &[i64]) -> Vec<i64> {
        row_times(b, &self.inverse)
    }

    pub fn invert_rat(&self, b: &[Rat]) -> Vec<Rat> {
        let inv = linalg::to_rat_matrix(&self.inverse);
        linalg::vec_mat(b, &inv)
    }
}
