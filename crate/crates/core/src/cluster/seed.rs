//! Seeds whose variables are stored as rational functions of the initial ones.

use serde_json::json;

use super::exchange::ExchangeMatrix;
use super::laurent::LaurentExpr;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Seed {
    pub matrix: ExchangeMatrix,
    pub variables: Vec<LaurentExpr>,
    /// Mutation directions applied to the initial seed.
    pub word: Vec<usize>,
}

/// Seeds compare by matrix and variables; the provenance word is ignored.
impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.variables == other.variables
    }
}

impl Eq for Seed {}

impl Seed {
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let m = matrix.m;
        let variables = (0..m).map(|i| LaurentExpr::var(m, i)).collect();
        Seed { matrix, variables, word: Vec::new() }
    }

    /// `prod_l A_l^{e_l}` in this seed's variables.
    pub fn monomial(&self, exps: &[i64]) -> Result<LaurentExpr> {
        let m = self.matrix.m;
        let mut out = LaurentExpr::one(m);
        for (a, &e) in self.variables.iter().zip(exps) {
            if e > 0 {
                out = out.mul(&a.pow(e as u32));
            } else if e < 0 {
                out = out.div(&a.pow((-e) as u32))?;
            }
        }
        Ok(out)
    }

    /// `X^_k = prod_j A_j^{e_{k,j}}`.
    pub fn x_hat(&self, k: usize) -> Result<LaurentExpr> {
        let r = self.matrix.row_of(k).ok_or(crate::Error::FrozenDirection(k))?;
        self.monomial(&self.matrix.entries[r])
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let matrix = self.matrix.mutate(k)?;
        let row = &self.matrix.entries[self.matrix.row_of(k).expect("checked by mutate")];
        let plus: Vec<i64> = row.iter().map(|&e| e.max(0)).collect();
        let minus: Vec<i64> = row.iter().map(|&e| (-e).max(0)).collect();
        let binomial = self.monomial(&plus)?.add(&self.monomial(&minus)?);
        let mut variables = self.variables.clone();
        variables[k - 1] = binomial.div(&self.variables[k - 1])?;
        let mut word = self.word.clone();
        word.push(k);
        Ok(Seed { matrix, variables, word })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<Seed> {
        word.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn is_laurent(&self) -> bool {
        self.variables.iter().all(LaurentExpr::is_laurent)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "word": self.word,
            "matrix": self.matrix.to_json(),
            "variables": self.variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}
