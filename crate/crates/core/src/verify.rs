//! The acceptance suite: worked examples reproduced exactly, plus exhaustive
//! scans of the finite reductions. Each criterion yields one pass/fail line.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cluster::{
    build_exchange_from_word, g_vector, lowest_term_valuation, upsilon_matrix, ExchangeMatrix, GVector,
    LaurentExpr, Seed, Tiebreak, TotalOrder,
};
use crate::error::Result;
use crate::linalg::Rat;
use crate::minors::{generalized_minor, initial_minor_specs, verify_initial_seed, UnitriangularPoint};
use crate::par::Execution;
use crate::polytope::{
    from_halfspaces, minkowski_condition_check, nz_polytope, string_polytope, Coordinates, Halfspace,
    RationalPolytope, DEFAULT_K_MAX,
};
use crate::rootdata::{RootDatum, Series, Weight, WeylGroup};
use crate::semitoric::{all_pairs_scan, Chart, CoordinateSystem};
use crate::zcrystal::{weight_multiplicities_oracle, LambdaCrystal, WordContext, DEFAULT_CRYSTAL_CAP};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:<3} {} ({} ms, budget {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

type Outcome = Result<(bool, String)>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn(Execution) -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: "1", title: "SL3 string data", budget: Duration::from_secs(1), run: c1_string_data },
    Criterion { id: "2", title: "SL3 NZ data", budget: Duration::from_secs(1), run: c2_nz_data },
    Criterion { id: "3", title: "SL4 exchange matrix and quiver", budget: Duration::from_secs(1), run: c3_sl4_seed },
    Criterion { id: "4", title: "crystal characters vs Freudenthal", budget: Duration::from_secs(60), run: c4_characters },
    Criterion { id: "5a", title: "union-of-faces scan, string and NZ", budget: Duration::from_secs(120), run: c5a_scan },
    Criterion { id: "5b", title: "stated certificate for (s1, s2s1)", budget: Duration::from_secs(120), run: c5b_certificate },
    Criterion { id: "6", title: "Minkowski conditions on A2 pairs", budget: Duration::from_secs(60), run: c6_minkowski },
    Criterion { id: "7", title: "mutation involutions and Laurent phenomenon", budget: Duration::from_secs(120), run: c7_mutation },
    Criterion { id: "8", title: "seed variables vs minors", budget: Duration::from_secs(30), run: c8_minors },
    Criterion { id: "9", title: "transport equivariance", budget: Duration::from_secs(30), run: c9_transport },
    Criterion { id: "10", title: "transfer matrices and valuations", budget: Duration::from_secs(30), run: c10_upsilon_valuation },
];

pub fn criterion_ids() -> Vec<&'static str> {
    CRITERIA.iter().map(|c| c.id).collect()
}

/// Runs one criterion; a library error counts as failure.
pub fn run_criterion(id: &str, exec: Execution) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let out = (c.run)(exec);
    let elapsed = start.elapsed();
    let (ok, detail) = match out {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = elapsed <= c.budget;
    let detail = if in_time { detail } else { format!("{detail}; over time budget") };
    Some(CriterionResult {
        id: c.id,
        title: c.title,
        passed: ok && in_time,
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: c.budget.as_millis(),
    })
}

pub fn run_all(exec: Execution) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.id, exec).expect("known id")).collect()
}

fn datum(s: Series, n: usize) -> Result<RootDatum> {
    RootDatum::new(s, n)
}

fn a2_ctx() -> Result<(WordContext, WeylGroup)> {
    let d = datum(Series::A, 2)?;
    Ok((WordContext::new(&d, &[1, 2, 1])?, WeylGroup::new(&d)?))
}

fn set3(rows: &[[i64; 3]]) -> BTreeSet<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn edges(c: &LambdaCrystal, label: impl Fn(usize) -> Vec<i64>) -> BTreeSet<(Vec<i64>, Vec<i64>, usize)> {
    let mut s = BTreeSet::new();
    for b in 0..c.len() {
        for i in 1..=c.context.datum.rank {
            if let Some(t) = c.f_tilde(b, i) {
                s.insert((label(b), label(t), i));
            }
        }
    }
    s
}

fn edge_list(rows: &[([i64; 3], [i64; 3], usize)]) -> BTreeSet<(Vec<i64>, Vec<i64>, usize)> {
    rows.iter().map(|(a, b, i)| (a.to_vec(), b.to_vec(), *i)).collect()
}

/// `lo . x <= hi` rows written as `normal . x <= offset`.
fn hs(normal: [i64; 3], offset: i64) -> Halfspace {
    Halfspace { normal: normal.to_vec(), offset: Rat::from_integer(offset as i128) }
}

/// Each polytope's vertices satisfy the other's inequalities.
fn double_inclusion(p: &RationalPolytope, q: &RationalPolytope) -> bool {
    p.vertices.iter().all(|v| q.contains(v)) && q.vertices.iter().all(|v| p.contains(v))
}

fn c1_string_data(_: Execution) -> Outcome {
    let (ctx, _) = a2_ctx()?;
    let lam = Weight(vec![1, 1]);
    let c = LambdaCrystal::generate(&ctx, &lam)?;
    let table = set3(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 0], [0, 2, 1], [2, 1, 0], [1, 2, 1]]);
    let phi: BTreeSet<Vec<i64>> = c.all_phi().into_iter().collect();
    let diagram = edge_list(&[
        ([0, 0, 0], [1, 0, 0], 1),
        ([1, 0, 0], [0, 1, 1], 2),
        ([0, 1, 1], [0, 2, 1], 2),
        ([0, 2, 1], [1, 2, 1], 1),
        ([0, 0, 0], [0, 1, 0], 2),
        ([0, 1, 0], [1, 1, 0], 1),
        ([1, 1, 0], [2, 1, 0], 1),
        ([2, 1, 0], [1, 2, 1], 2),
    ]);
    let graph_ok = edges(&c, |b| c.phi_string(b)) == diagram;
    // 0<=a3<=1, a3<=a2<=a3+1, 0<=a1<=a2-2a3+1
    let expected = from_halfspaces(
        3,
        &[hs([0, 0, -1], 0), hs([0, 0, 1], 1), hs([0, -1, 1], 0), hs([0, 1, -1], 1), hs([-1, 0, 0], 0), hs([1, -1, 2], 1)],
        &[],
    )?;
    let p = string_polytope(&ctx, &lam, DEFAULT_K_MAX)?;
    let hrep_ok = double_inclusion(&p.polytope, &expected);
    Ok((
        phi == table && c.len() == 8 && graph_ok && hrep_ok,
        format!("{} vectors, diagram {}, H-rep {}", phi.len(), ok(graph_ok), ok(hrep_ok)),
    ))
}

fn ok(b: bool) -> &'static str {
    if b {
        "matches"
    } else {
        "differs"
    }
}

fn c2_nz_data(_: Execution) -> Outcome {
    let (ctx, _) = a2_ctx()?;
    let lam = Weight(vec![1, 1]);
    let c = LambdaCrystal::generate(&ctx, &lam)?;
    let table = set3(&[[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 0], [0, 2, 1], [1, 1, 1], [1, 2, 1]]);
    let psi: BTreeSet<Vec<i64>> = c.all_psi().into_iter().collect();
    let diagram = edge_list(&[
        ([0, 0, 0], [0, 0, 1], 1),
        ([0, 0, 1], [0, 1, 1], 2),
        ([0, 1, 1], [0, 2, 1], 2),
        ([0, 2, 1], [1, 2, 1], 1),
        ([0, 0, 0], [0, 1, 0], 2),
        ([0, 1, 0], [1, 1, 0], 1),
        ([1, 1, 0], [1, 1, 1], 1),
        ([1, 1, 1], [1, 2, 1], 2),
    ]);
    let graph_ok = edges(&c, |b| c.psi(b)) == diagram;
    // 0<=a1<=1, 0<=a3<=1, a1<=a2<=a3+1
    let expected = from_halfspaces(
        3,
        &[hs([-1, 0, 0], 0), hs([1, 0, 0], 1), hs([0, 0, -1], 0), hs([0, 0, 1], 1), hs([1, -1, 0], 0), hs([0, 1, -1], 1)],
        &[],
    )?;
    let p = nz_polytope(&ctx, &lam, DEFAULT_K_MAX)?;
    let hrep_ok = double_inclusion(&p.polytope, &expected);
    Ok((
        psi == table && graph_ok && hrep_ok,
        format!("{} vectors, diagram {}, H-rep {}", psi.len(), ok(graph_ok), ok(hrep_ok)),
    ))
}

fn c3_sl4_seed(_: Execution) -> Outcome {
    let e = build_exchange_from_word(&datum(Series::A, 3)?, &[1, 2, 1, 3, 2, 1])?;
    let expected = vec![vec![0, -1, 1, 0, 0, 0], vec![1, 0, -1, -1, 1, 0], vec![-1, 1, 0, 0, -1, 1]];
    let arrows: BTreeSet<(usize, usize)> = e
        .to_dot()
        .lines()
        .filter_map(|l| {
            let (a, b) = l.trim().trim_end_matches(';').split_once(" -> ")?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect();
    let paper: BTreeSet<(usize, usize)> = [(1, 2), (3, 1), (2, 3), (2, 4), (5, 2), (3, 5), (6, 3)].into_iter().collect();
    let m_ok = e.entries == expected && e.unfrozen == vec![1, 2, 3];
    Ok((m_ok && arrows == paper, format!("matrix {}, {} arrows in DOT", ok(m_ok), arrows.len())))
}

fn c4_characters(_: Execution) -> Outcome {
    let cases: [(Series, usize, Vec<usize>); 3] = [
        (Series::A, 2, vec![1, 2, 1]),
        (Series::A, 3, vec![1, 2, 1, 3, 2, 1]),
        (Series::B, 2, vec![1, 2, 1, 2]),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut rho_a3 = 0;
    for (s, n, word) in cases {
        let d = datum(s, n)?;
        let ctx = WordContext::new(&d, &word)?;
        let weights: Vec<Weight> = (0..3usize.pow(n as u32))
            .map(|mut code| {
                Weight((0..n).map(|_| {
                    let x = (code % 3) as i64;
                    code /= 3;
                    x
                })
                .collect())
            })
            .collect();
        for lam in weights {
            let c = LambdaCrystal::generate(&ctx, &lam)?;
            let (oracle, _) = weight_multiplicities_oracle(&d, &lam, DEFAULT_CRYSTAL_CAP)?;
            checked += 1;
            if c.character() != oracle {
                bad.push(format!("{s}{n} {lam}"));
            }
            if s == Series::A && n == 3 && lam == d.rho() {
                rho_a3 = c.len();
            }
        }
    }
    Ok((
        bad.is_empty() && rho_a3 == 64,
        format!("{checked} weights checked, {} mismatches, |B(rho)| = {rho_a3} in A3", bad.len()),
    ))
}

fn scan_cases() -> Vec<(Series, usize, Vec<usize>, Vec<i64>)> {
    vec![
        (Series::A, 2, vec![1, 2, 1], vec![1, 1]),
        (Series::A, 2, vec![1, 2, 1], vec![2, 2]),
        (Series::A, 2, vec![1, 2, 1], vec![1, 2]),
        (Series::B, 2, vec![1, 2, 1, 2], vec![1, 1]),
    ]
}

fn c5a_scan(exec: Execution) -> Outcome {
    let mut parts = Vec::new();
    let mut all = true;
    for (s, n, word, lam) in scan_cases() {
        let d = datum(s, n)?;
        let ctx = WordContext::new(&d, &word)?;
        let g = WeylGroup::new(&d)?;
        for (name, coords) in [("string", CoordinateSystem::String), ("nz", CoordinateSystem::Nz)] {
            let chart = Chart::new(&ctx, &Weight(lam.clone()), coords, DEFAULT_K_MAX)?;
            let sum = all_pairs_scan(&chart, &g, exec)?;
            let good = sum.certified == sum.pairs && sum.all_passed();
            if s == Series::A && sum.pairs != 19 {
                all = false;
            }
            all &= good;
            parts.push(format!("{s}{n} {} {name} {}/{}", Weight(lam.clone()), sum.passed, sum.pairs));
        }
    }
    Ok((all, parts.join(" ")))
}

fn c5b_certificate(_: Execution) -> Outcome {
    let (ctx, g) = a2_ctx()?;
    let v = g.index_of_word(&[1])?;
    let w = g.index_of_word(&[2, 1])?;
    let chart = Chart::new(&ctx, &Weight(vec![1, 1]), CoordinateSystem::String, DEFAULT_K_MAX)?;
    let r = chart.report(&g, v, w)?;
    let got: BTreeSet<Vec<Vec<i64>>> = r.certificate.iter().map(|f| f.lattice_points.clone()).collect();
    let stated: BTreeSet<Vec<Vec<i64>>> =
        [vec![vec![1, 0, 0]], vec![vec![0, 1, 1], vec![0, 2, 1]]].into_iter().collect();
    let describe: Vec<String> = r
        .certificate
        .iter()
        .map(|f| {
            let v: Vec<String> = f.vertices.iter().map(|x| format!("({})", x.join(","))).collect();
            format!("dim {} [{}]", f.dim, v.join(" "))
        })
        .collect();
    Ok((got == stated, format!("maximal faces: {}", describe.join("; "))))
}

fn c6_minkowski(_: Execution) -> Outcome {
    let (ctx, g) = a2_ctx()?;
    let lam = Weight(vec![1, 1]);
    let mut passed = 0;
    let mut total = 0;
    for coords in [Coordinates::String, Coordinates::Nz] {
        for (v, w) in g.bruhat_pairs() {
            let r = minkowski_condition_check(&ctx, &g, &lam, &lam, v, w, coords)?;
            total += 1;
            passed += usize::from(r.passed());
        }
    }
    Ok((passed == total, format!("{passed}/{total} pair checks (string and NZ)")))
}

fn all_words(dirs: &[usize], max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &k in dirs {
                let mut x: Vec<usize> = w.clone();
                x.push(k);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn c7_mutation(_: Execution) -> Outcome {
    let a2 = build_exchange_from_word(&datum(Series::A, 2)?, &[1, 2, 1])?;
    let a3 = build_exchange_from_word(&datum(Series::A, 3)?, &[1, 2, 1, 3, 2, 1])?;
    let b2 = build_exchange_from_word(&datum(Series::B, 2)?, &[1, 2, 1, 2])?;
    let mut involutions = true;
    for e in [&a2, &a3] {
        let s = Seed::initial(e.clone());
        for &k in &e.unfrozen {
            involutions &= e.mutate(k)?.mutate(k)? == *e;
            involutions &= s.mutate(k)?.mutate(k)? == s;
        }
    }
    // Laurent phenomenon along every word of length <= 4, sharing prefixes
    let s3 = Seed::initial(a3.clone());
    let mut seeds: BTreeMap<Vec<usize>, Seed> = BTreeMap::from([(vec![], s3)]);
    let mut non_laurent = 0;
    let words = all_words(&a3.unfrozen, 4);
    for w in &words[1..] {
        let parent = seeds[&w[..w.len() - 1]].clone();
        let s = parent.mutate(*w.last().expect("nonempty"))?;
        if !s.is_laurent() {
            non_laurent += 1;
        }
        seeds.insert(w.clone(), s);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tropical = true;
    let mut vectors = 0;
    for e in [&a2, &a3, &b2] {
        for &k in &e.unfrozen {
            let mu = e.mutate(k)?;
            for _ in 0..1000 {
                let g: Vec<i64> = (0..e.m).map(|_| rng.gen_range(-20..=20)).collect();
                tropical &= mu.tropical_mutate(&e.tropical_mutate(&g, k)?, k)? == g;
                vectors += 1;
            }
        }
    }
    Ok((
        involutions && non_laurent == 0 && tropical,
        format!(
            "involutions {}, {} words with {} non-Laurent, {} tropical round trips {}",
            if involutions { "hold" } else { "fail" },
            words.len() - 1,
            non_laurent,
            vectors,
            if tropical { "exact" } else { "broken" }
        ),
    ))
}

fn c8_minors(exec: Execution) -> Outcome {
    let d = datum(Series::A, 2)?;
    let word = [1, 2, 1];
    let mutated = Seed::initial(build_exchange_from_word(&d, &word)?).mutate(1)?.variables[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let specs = initial_minor_specs(&word);
    let (mut hits, mut skipped) = (0, 0);
    for _ in 0..100 {
        let g = UnitriangularPoint::random(3, &mut rng);
        let vals: Vec<_> = specs.iter().map(|s| generalized_minor(&d, s, &g)).collect::<Result<_>>()?;
        match mutated.eval(&vals) {
            Some(x) if x == g.entries[2][1] => hits += 1,
            Some(_) => {}
            None => skipped += 1,
        }
    }
    let a3 = verify_initial_seed(&datum(Series::A, 3)?, &[1, 2, 1, 3, 2, 1], None, 100, 8, exec)?;
    let a3_ok = a3.len() == 3 && a3.iter().all(|r| r.consistent);
    let a3_samples: usize = a3.iter().map(|r| r.samples_ok).sum();
    Ok((
        hits + skipped == 100 && hits > 0 && a3_ok,
        format!("A2: {hits} equal to g32, {skipped} skipped; A3: 3 directions over {a3_samples} samples {}",
            if a3_ok { "consistent" } else { "inconsistent" }),
    ))
}

fn c9_transport(exec: Execution) -> Outcome {
    let (ctx, g) = a2_ctx()?;
    let chart = Chart::new(&ctx, &Weight(vec![1, 1]), CoordinateSystem::Cluster { mutation: vec![1] }, DEFAULT_K_MAX)?;
    let sum = all_pairs_scan(&chart, &g, exec)?;
    let pts = chart.polytope.lattice_points()?.len();
    Ok((
        sum.pairs == 19 && sum.all_passed() && pts == 8,
        format!("{} of {} pairs certified at both seeds with counts preserved; {} lattice points", sum.passed, sum.pairs, pts),
    ))
}

/// `A^g (c_0 + sum c_a X^a)` with `a >= 0`, built term by term.
fn pointed_corpus(rng: &mut ChaCha8Rng, matrices: &[ExchangeMatrix], count: usize) -> Vec<(ExchangeMatrix, LaurentExpr, Vec<i64>)> {
    (0..count)
        .map(|i| {
            let e = matrices[i % matrices.len()].clone();
            let g: Vec<i64> = (0..e.m).map(|_| rng.gen_range(-2..=2)).collect();
            let mut terms = vec![(g.clone(), if rng.gen_bool(0.5) { 1 } else { rng.gen_range(2..=4) })];
            for _ in 0..rng.gen_range(1..=4) {
                let a: Vec<i64> = e.unfrozen.iter().map(|_| rng.gen_range(0..=2)).collect();
                if a.iter().all(|&x| x == 0) {
                    continue;
                }
                let mut ex = g.clone();
                for (r, &ar) in a.iter().enumerate() {
                    for (x, &y) in ex.iter_mut().zip(&e.entries[r]) {
                        *x += ar * y;
                    }
                }
                terms.push((ex, rng.gen_range(1..=3)));
            }
            let f = LaurentExpr::from_terms(e.m, &terms);
            (e, f, g)
        })
        .collect()
}

fn c10_upsilon_valuation(_: Execution) -> Outcome {
    let mut words = 0;
    let mut unimodular = true;
    for n in [2, 3] {
        let d = datum(Series::A, n)?;
        let g = WeylGroup::new(&d)?;
        for w in g.reduced_words(g.longest()) {
            words += 1;
            unimodular &= upsilon_matrix(&d, &w)?.determinant.abs() == 1;
        }
    }
    let a2 = build_exchange_from_word(&datum(Series::A, 2)?, &[1, 2, 1])?;
    let a3 = build_exchange_from_word(&datum(Series::A, 3)?, &[1, 2, 1, 3, 2, 1])?;
    let a3m = a3.mutate_word(&[2, 1])?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let corpus = pointed_corpus(&mut rng, &[a2, a3, a3m], 50);
    let mut agree = 0;
    for (e, f, g) in &corpus {
        let gv = g_vector(f, e)?;
        let mut good = matches!(&gv, GVector::Pointed { g: x, .. } if x == g);
        for tb in [Tiebreak::Lex, Tiebreak::RevLex, Tiebreak::Random(99)] {
            good &= lowest_term_valuation(f, &TotalOrder::new(e, tb)?)? == *g;
        }
        agree += usize::from(good);
    }
    Ok((
        unimodular && agree == corpus.len(),
        format!("{words} longest words unimodular: {unimodular}; {agree}/{} pointed expressions agree under 3 orders", corpus.len()),
    ))
}
