//! Independent ground truth and seeded instance generators.
//!
//! The rank/determinant oracle is plain Gaussian elimination with partial
//! pivoting and shares no code with the analyzer. Generators are
//! deterministic in their seed.

use std::f64::consts::{PI, TAU};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::{unit, Complex, ComplexMatrix, RealMatrix};

/// Largest order the oracle accepts.
pub const ORACLE_LIMIT: usize = 64;

/// Default relative pivot threshold.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-10;

const MAX_SUPPORT_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub rank: usize,
    #[serde(with = "complex_pair")]
    pub det: Complex,
    #[serde(with = "basis_pairs")]
    pub null_basis: Vec<Vec<Complex>>,
}

impl OracleResult {
    pub fn is_singular(&self, n: usize) -> bool {
        self.rank < n
    }
}

mod complex_pair {
    use super::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex::new(re, im))
    }
}

mod basis_pairs {
    use super::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(b: &[Vec<Complex>], s: S) -> Result<S::Ok, S::Error> {
        b.iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Complex>>, D::Error> {
        let raw = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|v| v.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
            .collect())
    }
}

/// Rank, determinant and null space by partial-pivoting elimination.
///
/// A pivot whose modulus is at most `pivot_tol` times the largest initial
/// row modulus sum counts as zero, and its column becomes free.
pub fn rank_det_oracle(a: &ComplexMatrix, pivot_tol: f64) -> Result<OracleResult> {
    let n = a.n();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { n, limit: ORACLE_LIMIT });
    }
    let threshold = pivot_tol * a.max_row_modulus_sum();
    let mut u: Vec<Vec<Complex>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut free = Vec::new();
    let mut swaps = 0usize;
    let mut row = 0usize;
    for col in 0..n {
        let best = (row..n).max_by(|&r, &s| u[r][col].norm().total_cmp(&u[s][col].norm()));
        let Some(p) = best.filter(|&p| u[p][col].norm() > threshold) else {
            free.push(col);
            continue;
        };
        if p != row {
            u.swap(p, row);
            swaps += 1;
        }
        let pivot = u[row][col];
        for r in row + 1..n {
            let f = u[r][col] / pivot;
            u[r][col] = Complex::new(0.0, 0.0);
            for c in col + 1..n {
                let t = u[row][c];
                u[r][c] -= f * t;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let rank = pivots.len();
    let det = if rank == n {
        let prod: Complex = pivots.iter().map(|&(r, c)| u[r][c]).product();
        if swaps % 2 == 1 {
            -prod
        } else {
            prod
        }
    } else {
        Complex::new(0.0, 0.0)
    };
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut x = vec![Complex::new(0.0, 0.0); n];
            x[f] = Complex::new(1.0, 0.0);
            for &(r, c) in pivots.iter().rev() {
                let s: Complex = (c + 1..n).map(|k| u[r][k] * x[k]).sum();
                x[c] = -s / u[r][c];
            }
            x
        })
        .collect();
    Ok(OracleResult { rank, det, null_basis })
}

/// How the unit-modulus factors of a planted instance are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    /// Uniform phases on the unit circle.
    Complex,
    /// Phases in `{0, π}`: a real matrix with a `±1` null vector.
    Real,
    /// No phases: `A` equals the comparison-form seed.
    Identity,
}

/// Singular irreducible weakly dominant matrix with a known null vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub a: ComplexMatrix,
    /// Unit-modulus vector with `A·gamma = 0`.
    pub gamma: Vec<Complex>,
    /// Row-balanced comparison-form matrix the instance was built from.
    pub mu_seed: RealMatrix,
    /// Diagonal phases `D_C`.
    pub diag_phase: Vec<Complex>,
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Off-diagonal support whose digraph is strongly connected.
pub fn strongly_connected_support<R: Rng>(n: usize, density: f64, rng: &mut R) -> Result<Vec<(usize, usize)>> {
    if n == 1 {
        return Ok(Vec::new());
    }
    for _ in 0..MAX_SUPPORT_ATTEMPTS {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .filter(|_| rng.gen::<f64>() < density)
            .collect();
        if Digraph::from_edges(n, &edges).is_strongly_connected() {
            return Ok(edges);
        }
    }
    Err(Error::DegenerateSupport {
        attempts: MAX_SUPPORT_ATTEMPTS,
    })
}

/// Row-balanced comparison-form matrix on a strongly connected support,
/// off-diagonal moduli drawn from `[0.5, 1.5)`.
pub fn random_balanced_comparison<R: Rng>(n: usize, density: f64, rng: &mut R) -> Result<RealMatrix> {
    let support = strongly_connected_support(n, density, rng)?;
    let mut mu = RealMatrix::from_fn(n, |_, _| 0.0);
    for (i, j) in support {
        mu[(i, j)] = -rng.gen_range(0.5..1.5);
    }
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| -mu[(i, j)]).sum();
        mu[(i, i)] = off;
    }
    Ok(mu)
}

fn draw_phase<R: Rng>(mode: PhaseMode, rng: &mut R) -> Complex {
    match mode {
        PhaseMode::Complex => unit(rng.gen_range(0.0..TAU)),
        PhaseMode::Real => {
            if rng.gen_bool(0.5) {
                Complex::new(1.0, 0.0)
            } else {
                Complex::new(-1.0, 0.0)
            }
        }
        PhaseMode::Identity => Complex::new(1.0, 0.0),
    }
}

/// `A = Υ_C·D_C·μ·Υ_C⁻¹`, so that `A·diag(Υ_C) = Υ_C·D_C·μ·1 = 0`.
pub fn planted_matrix(mu: &RealMatrix, gamma: &[Complex], diag_phase: &[Complex]) -> ComplexMatrix {
    ComplexMatrix::from_fn(mu.n(), |i, j| {
        if mu[(i, j)] == 0.0 {
            Complex::new(0.0, 0.0)
        } else {
            gamma[i] * diag_phase[i] * mu[(i, j)] / gamma[j]
        }
    })
}

pub fn gen_singular_instance(n: usize, density: f64, seed: u64) -> Result<PlantedInstance> {
    gen_singular_instance_with(n, density, PhaseMode::Complex, &mut rng_from_seed(seed))
}

pub fn gen_singular_instance_with<R: Rng>(
    n: usize,
    density: f64,
    mode: PhaseMode,
    rng: &mut R,
) -> Result<PlantedInstance> {
    if n < 2 {
        return Err(Error::PreconditionViolated("planted instances need n >= 2".to_string()));
    }
    let mu = random_balanced_comparison(n, density, rng)?;
    let gamma: Vec<Complex> = (0..n).map(|_| draw_phase(mode, rng)).collect();
    let diag_phase: Vec<Complex> = (0..n).map(|_| draw_phase(mode, rng)).collect();
    Ok(PlantedInstance {
        a: planted_matrix(&mu, &gamma, &diag_phase),
        gamma,
        mu_seed: mu,
        diag_phase,
    })
}

/// Multiplies entry `(i, j)` by `e^{iδ}`; moduli are unchanged.
pub fn perturb_edge(a: &ComplexMatrix, i: usize, j: usize, delta: f64) -> ComplexMatrix {
    let mut out = a.clone();
    out[(i, j)] *= unit(delta);
    out
}

/// Rotates the first off-diagonal entry (row-major) of a planted instance by
/// `delta`. In a strongly connected digraph every edge lies on a cycle, so
/// the angle system picks up a residual of `delta` around that cycle.
pub fn gen_perturbed_instance(base: &PlantedInstance, delta: f64) -> Result<ComplexMatrix> {
    if !(delta > 0.0 && delta <= PI) {
        return Err(Error::PreconditionViolated(format!(
            "perturbation {delta} outside (0, π]"
        )));
    }
    let n = base.a.n();
    let (i, j) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && base.a[(i, j)].norm() > 0.0)
        .ok_or_else(|| Error::PreconditionViolated("no off-diagonal entry to perturb".to_string()))?;
    Ok(perturb_edge(&base.a, i, j, delta))
}

/// Irreducible dominant matrix with at least one strict row: a planted
/// complex instance whose diagonal is inflated on a random nonempty set of
/// rows by a factor in `[1.05, 2)`.
pub fn gen_strict_instance<R: Rng>(n: usize, density: f64, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 1 {
        return Ok(ComplexMatrix::from_rows(vec![vec![
            unit(rng.gen_range(0.0..TAU)) * rng.gen_range(0.5..1.5),
        ]]));
    }
    let mut a = gen_singular_instance_with(n, density, PhaseMode::Complex, rng)?.a;
    let forced = rng.gen_range(0..n);
    for i in 0..n {
        if i == forced || rng.gen_bool(0.3) {
            a[(i, i)] *= rng.gen_range(1.05..2.0);
        }
    }
    Ok(a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixtureKind {
    Laplacian,
    Kolmogorov,
    MarkovM,
}

/// `L = diag(W·1) − W` for nonnegative off-diagonal weights `W`.
pub fn laplacian_from_weights(w: &RealMatrix) -> ComplexMatrix {
    let n = w.n();
    ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            let s: f64 = (0..n).filter(|&k| k != i).map(|k| w[(i, k)]).sum();
            Complex::new(s, 0.0)
        } else {
            Complex::new(-w[(i, j)], 0.0)
        }
    })
}

/// Generator `Q − I` of a row-stochastic `Q`.
pub fn kolmogorov_from_stochastic(q: &RealMatrix) -> ComplexMatrix {
    let n = q.n();
    ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            // exact complement keeps the row balanced in floating point
            let off: f64 = (0..n).filter(|&k| k != i).map(|k| q[(i, k)]).sum();
            Complex::new(-off, 0.0)
        } else {
            Complex::new(q[(i, j)], 0.0)
        }
    })
}

/// Markov M-matrix `I − S` for a zero-diagonal row-stochastic `S`.
pub fn markov_m_from_stochastic(s: &RealMatrix) -> ComplexMatrix {
    let n = s.n();
    ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(-s[(i, j)], 0.0)
        }
    })
}

fn row_normalize(w: &RealMatrix) -> RealMatrix {
    let n = w.n();
    RealMatrix::from_fn(n, |i, j| {
        let s: f64 = w.row(i).iter().sum();
        if s > 0.0 {
            w[(i, j)] / s
        } else {
            0.0
        }
    })
}

/// Row-balanced fixtures from network and Markov models. All are weakly
/// row dominant; for `n ≥ 2` the support is strongly connected.
pub fn gen_fixture(kind: FixtureKind, n: usize, seed: u64) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
    }
    if n == 1 {
        return Ok(ComplexMatrix::zeros(1));
    }
    let mut rng = rng_from_seed(seed);
    let support = strongly_connected_support(n, 0.5, &mut rng)?;
    let mut w = RealMatrix::from_fn(n, |_, _| 0.0);
    for (i, j) in support {
        w[(i, j)] = rng.gen_range(0.1..1.0);
    }
    Ok(match kind {
        FixtureKind::Laplacian => laplacian_from_weights(&w),
        FixtureKind::Kolmogorov => {
            // keep some mass on the diagonal of Q
            let mut q = w.clone();
            for i in 0..n {
                q[(i, i)] = rng.gen_range(0.0..1.0);
            }
            kolmogorov_from_stochastic(&row_normalize(&q))
        }
        FixtureKind::MarkovM => markov_m_from_stochastic(&row_normalize(&w)),
    })
}

/// Block lower triangular composition under a random symmetric permutation.
///
/// Independent blocks are planted singular, phase-perturbed or strict;
/// dependent blocks are irreducible and receive coupling entries into
/// earlier blocks with their diagonals raised to keep every row dominant.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducibleInstance {
    pub a: ComplexMatrix,
    /// Original indices of each generated block, in generation order.
    pub blocks: Vec<Vec<usize>>,
    pub independent_count: usize,
}

pub fn gen_reducible_instance<R: Rng>(max_n: usize, rng: &mut R) -> Result<ReducibleInstance> {
    assert!(max_n >= 2);
    let s = rng.gen_range(1..=2usize.min(max_n));
    let mut sizes: Vec<usize> = Vec::new();
    let mut total = 0;
    for _ in 0..s {
        let room = max_n - total - (s - sizes.len() - 1);
        let m = rng.gen_range(1..=room.min(3));
        sizes.push(m);
        total += m;
    }
    let k = rng.gen_range(1..=2);
    for _ in 0..k {
        if total >= max_n {
            break;
        }
        let m = rng.gen_range(1..=(max_n - total).min(3));
        sizes.push(m);
        total += m;
    }
    let n = total;
    let mut m = ComplexMatrix::zeros(n);
    let mut offsets = Vec::with_capacity(sizes.len());
    let mut off = 0;
    for &sz in &sizes {
        offsets.push(off);
        off += sz;
    }

    for (p, &sz) in sizes.iter().enumerate() {
        let o = offsets[p];
        let block = if p < s {
            independent_block(sz, rng)?
        } else if sz == 1 {
            ComplexMatrix::zeros(1)
        } else {
            gen_singular_instance_with(sz, 0.6, PhaseMode::Complex, rng)?.a
        };
        for i in 0..sz {
            for j in 0..sz {
                m[(o + i, o + j)] = block[(i, j)];
            }
        }
        if p >= s {
            // coupling into earlier blocks; at least one entry, then raise diagonals
            let earlier = o;
            let mut coupled = false;
            for i in 0..sz {
                let want = !coupled && i == sz - 1 || rng.gen_bool(0.5);
                if !want {
                    continue;
                }
                let entries = rng.gen_range(1..=earlier.min(2));
                for _ in 0..entries {
                    let j = rng.gen_range(0..earlier);
                    m[(o + i, j)] = unit(rng.gen_range(0.0..TAU)) * rng.gen_range(0.5..1.5);
                }
                coupled = true;
            }
            for i in 0..sz {
                let r = o + i;
                let off_sum: f64 = (0..n).filter(|&j| j != r).map(|j| m[(r, j)].norm()).sum();
                let phase = crate::matrix::argument(m[(r, r)]).unwrap_or_else(|| rng.gen_range(0.0..TAU));
                let slack = if rng.gen_bool(0.5) {
                    1.0
                } else {
                    rng.gen_range(1.0..1.5)
                };
                m[(r, r)] = unit(phase) * off_sum * slack;
            }
        }
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    // perm[old] = new
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(perm[i], perm[j])] = m[(i, j)];
        }
    }
    let blocks = sizes
        .iter()
        .zip(&offsets)
        .map(|(&sz, &o)| {
            let mut b: Vec<usize> = (o..o + sz).map(|v| perm[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();
    Ok(ReducibleInstance {
        a,
        blocks,
        independent_count: s,
    })
}

fn independent_block<R: Rng>(sz: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if sz == 1 {
        return Ok(if rng.gen_bool(0.5) {
            ComplexMatrix::zeros(1)
        } else {
            ComplexMatrix::from_rows(vec![vec![unit(rng.gen_range(0.0..TAU))]])
        });
    }
    Ok(match rng.gen_range(0..3) {
        0 => gen_singular_instance_with(sz, 0.6, PhaseMode::Complex, rng)?.a,
        1 => {
            let base = gen_singular_instance_with(sz, 0.6, PhaseMode::Complex, rng)?;
            let edges: Vec<(usize, usize)> = Digraph::from_pattern(sz, |i, j| base.a[(i, j)].norm() > 0.0)
                .edges()
                .collect();
            let (i, j) = *edges.choose(rng).expect("irreducible block has edges");
            perturb_edge(&base.a, i, j, rng.gen_range(1e-6..PI))
        }
        _ => gen_strict_instance(sz, 0.6, rng)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{classify_rows, Tolerances};

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn oracle_on_ones() {
        let r = rank_det_oracle(&ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]), 1e-10).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.det, c(0.0));
        assert_eq!(r.null_basis.len(), 1);
        let v = &r.null_basis[0];
        assert!((v[0] + v[1]).norm() < 1e-15);
    }

    #[test]
    fn oracle_on_identity() {
        let r = rank_det_oracle(&ComplexMatrix::identity(4), 1e-10).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.det, c(1.0));
        assert!(r.null_basis.is_empty());
    }

    #[test]
    fn oracle_on_reducible_example() {
        // cofactor expansion along column 3: det = 2·det([[1,−1],[−1,1]]) = 0
        let a = ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [-1.0, 1.0, 0.0], [0.0, -1.0, 2.0]]);
        let r = rank_det_oracle(&a, 1e-10).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.det, c(0.0));
    }

    #[test]
    fn oracle_det_matches_cofactor_expansion() {
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex::new(1.0, 1.0), c(2.0), c(0.0)],
            vec![c(0.0), Complex::new(0.0, 3.0), c(1.0)],
            vec![c(4.0), c(0.0), c(1.0)],
        ]);
        // (1+i)(3i·1 − 1·0) − 2(0·1 − 1·4) + 0 = (1+i)·3i + 8 = 5 + 3i
        let r = rank_det_oracle(&a, 1e-10).unwrap();
        assert!((r.det - Complex::new(5.0, 3.0)).norm() < 1e-13);
    }

    #[test]
    fn oracle_limit() {
        assert!(matches!(
            rank_det_oracle(&ComplexMatrix::identity(65), 1e-10),
            Err(Error::TooLarge { n: 65, .. })
        ));
    }

    #[test]
    fn planted_instances_are_singular_and_weak() {
        let tol = Tolerances::default();
        for seed in 0..20 {
            let p = gen_singular_instance(5, 0.4, seed).unwrap();
            assert!(classify_rows(&p.a, &tol).all_weak());
            let r = p.a.mul_vec(&p.gamma);
            let res = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(res <= 1e-12 * p.a.max_row_modulus_sum());
            assert!(crate::digraph::associated_digraph(&p.a).is_strongly_connected());
        }
    }

    #[test]
    fn identity_phases_reduce_to_seed() {
        let p = gen_singular_instance_with(4, 0.5, PhaseMode::Identity, &mut rng_from_seed(3)).unwrap();
        assert_eq!(p.a, p.mu_seed.to_complex());
    }

    #[test]
    fn two_by_two_planted_is_similar_to_signed_pair() {
        let mu = RealMatrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]);
        let g = [unit(0.3), unit(1.7)];
        let a = planted_matrix(&mu, &g, &[c(1.0), c(1.0)]);
        let back = ComplexMatrix::from_fn(2, |i, j| a[(i, j)] * g[j] / g[i]);
        for (x, y) in back.entries().iter().zip(mu.to_complex().entries()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            gen_singular_instance(6, 0.5, 42).unwrap(),
            gen_singular_instance(6, 0.5, 42).unwrap()
        );
        assert_eq!(
            gen_fixture(FixtureKind::Kolmogorov, 5, 9).unwrap(),
            gen_fixture(FixtureKind::Kolmogorov, 5, 9).unwrap()
        );
    }

    #[test]
    fn perturbation_of_ones() {
        let base = PlantedInstance {
            a: ComplexMatrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]),
            gamma: vec![c(1.0), c(-1.0)],
            mu_seed: RealMatrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]),
            diag_phase: vec![c(1.0), c(1.0)],
        };
        let p = gen_perturbed_instance(&base, PI).unwrap();
        assert!((p[(0, 1)] - c(-1.0)).norm() < 1e-15);
        let r = rank_det_oracle(&p, 1e-10).unwrap();
        assert!((r.det - c(2.0)).norm() < 1e-14);
        assert!(gen_perturbed_instance(&base, 0.0).is_err());
        assert!(gen_perturbed_instance(&base, 4.0).is_err());
    }

    #[test]
    fn fixtures_are_row_balanced() {
        let tol = Tolerances::default();
        for kind in [FixtureKind::Laplacian, FixtureKind::Kolmogorov, FixtureKind::MarkovM] {
            for n in 1..6 {
                let a = gen_fixture(kind, n, n as u64).unwrap();
                assert!(crate::matrix::balance_check(&a, crate::matrix::Axis::Row, &tol).all);
                assert!(classify_rows(&a, &tol).is_dominant());
            }
        }
        let w = RealMatrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
        assert_eq!(
            laplacian_from_weights(&w),
            ComplexMatrix::from_real_rows(&[[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]])
        );
        let q = RealMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(kolmogorov_from_stochastic(&q), ComplexMatrix::zeros(2));
    }

    #[test]
    fn reducible_instances_are_dominant() {
        let tol = Tolerances::default();
        let mut rng = rng_from_seed(11);
        for _ in 0..50 {
            let r = gen_reducible_instance(8, &mut rng).unwrap();
            assert!(r.a.n() <= 8);
            assert!(classify_rows(&r.a, &tol).is_dominant());
        }
    }
}
