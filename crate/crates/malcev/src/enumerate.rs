//! Deterministic generation: a fixed linear-congruential generator for
//! seeded random instances, exhaustive enumeration of small structures
//! over prime fields, and a brute-force kernel counter usable as an
//! independent rank oracle.
//!
//! Exhaustive walks index candidates by a plain `u64` counter whose
//! little-endian base-p digits fill the unknowns in column-major order;
//! they do not touch the random generator, so the two sources of instances
//! are independent.

use crate::cohomology::{OneCochain, TwoCochain};
use crate::deform::NijenhuisPair;
use crate::error::{Error, Result};
use crate::et::EmbeddingTensor;
use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::scalar::{Field, Scalar};

/// Name of the generator algorithm, stable across releases: a 64-bit
/// linear congruential generator with the multiplier/increment pair
/// 6364136223846793005 / 1442695040888963407, emitting the high 31 bits
/// (state >> 33) of each step.
pub const GENERATOR_ID: &str = "lcg64-mmix-high31";

const LCG_MUL: u64 = 6364136223846793005;
const LCG_ADD: u64 = 1442695040888963407;

/// The seeded generator behind every `random` operation.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    /// Next 31-bit output.
    pub fn next_u31(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_ADD);
        (self.state >> 33) as u32
    }

    /// Uniform-ish residue below `k` (k ≤ 2³¹; the tiny modulo bias is
    /// irrelevant for test-instance generation and keeps the stream
    /// reproducible from the identifier alone).
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0 && k <= 1 << 31, "range out of bounds");
        u64::from(self.next_u31()) % k
    }

    /// Integer in the inclusive range [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// A scalar: over ℚ an integer in [−2, 2], over 𝔽p a uniform residue.
    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Q => Scalar::from_int(field, self.int_in(-2, 2)),
            Field::Fp(p) => Scalar::from_int(field, self.below(p.min(1 << 31)) as i64),
        }
    }
}

/// Instance shapes the generator knows how to fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeSpec {
    /// A rows×cols matrix.
    Matrix { rows: usize, cols: usize },
    /// A skew bracket table for an algebra of the given dimension.
    Skew { dim: usize },
    /// A deformation datum (two-cochain with (v, w) = (m, n)).
    Triple { n: usize, m: usize },
}

impl std::str::FromStr for ShapeSpec {
    type Err = Error;

    /// Grammar: `matrix:RxC` | `skew:N` | `triple:N,M`.
    fn from_str(s: &str) -> Result<ShapeSpec> {
        let bad = || Error::ParseError(format!("bad shape '{s}': expected matrix:RxC, skew:N, or triple:N,M"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let dims = |text: &str, sep: char| -> Result<(usize, usize)> {
            let (a, b) = text.split_once(sep).ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        };
        match kind {
            "matrix" => {
                let (rows, cols) = dims(rest, 'x')?;
                Ok(ShapeSpec::Matrix { rows, cols })
            }
            "skew" => Ok(ShapeSpec::Skew { dim: rest.parse().map_err(|_| bad())? }),
            "triple" => {
                let (n, m) = dims(rest, ',')?;
                Ok(ShapeSpec::Triple { n, m })
            }
            _ => Err(bad()),
        }
    }
}

pub fn random_matrix(lcg: &mut Lcg, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| lcg.scalar(field))
}

/// A random skew bracket table (no identities imposed beyond skewness).
pub fn random_skew_table(
    lcg: &mut Lcg,
    field: Field,
    dim: usize,
) -> Result<crate::algebra::AlgebraData> {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v: Vec<Scalar> = (0..dim).map(|_| lcg.scalar(field)).collect();
            entries.push((i, j, v));
        }
    }
    crate::algebra::AlgebraData::skew(field, dim, entries)
}

/// A random two-cochain of the given coefficient dimensions.
pub fn random_two_cochain(
    lcg: &mut Lcg,
    field: Field,
    n: usize,
    m: usize,
    v: usize,
    w: usize,
) -> Result<TwoCochain> {
    let coords: Vec<Scalar> =
        (0..TwoCochain::coord_len(n, m, v, w)).map(|_| lcg.scalar(field)).collect();
    TwoCochain::from_coords(field, n, m, v, w, &coords)
}

/// A random one-cochain of the given coefficient dimensions.
pub fn random_one_cochain(
    lcg: &mut Lcg,
    field: Field,
    n: usize,
    m: usize,
    v: usize,
    w: usize,
) -> Result<OneCochain> {
    let coords: Vec<Scalar> =
        (0..OneCochain::coord_len(n, m, v, w)).map(|_| lcg.scalar(field)).collect();
    OneCochain::from_coords(field, n, m, v, w, &coords)
}

/// A random deformation datum for structure dimensions (n, m).
pub fn random_triple(lcg: &mut Lcg, field: Field, n: usize, m: usize) -> Result<TwoCochain> {
    random_two_cochain(lcg, field, n, m, m, n)
}

const ENUM_LIMIT_LOG2: u32 = 20;

/// Guard for exhaustive walks: prime field, p ≤ 5, and p^coords within
/// 2^20 candidates.
fn enum_guard(field: Field, coords: usize) -> Result<(u64, u64)> {
    let p = match field {
        Field::Fp(p) => p,
        Field::Q => {
            return Err(Error::TooLarge(
                "exhaustive enumeration requires a finite prime field".into(),
            ))
        }
    };
    if p > 5 {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration is limited to p ≤ 5, got p = {p}"
        )));
    }
    let mut total: u64 = 1;
    for _ in 0..coords {
        total = total
            .checked_mul(p)
            .filter(|t| *t <= 1 << ENUM_LIMIT_LOG2)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "candidate space {p}^{coords} exceeds 2^{ENUM_LIMIT_LOG2}"
                ))
            })?;
    }
    Ok((p, total))
}

/// Fill a rows×cols matrix from the little-endian base-p digits of the
/// counter, column-major: digit q lands at (row q mod rows, column q div
/// rows).
fn matrix_from_counter(field: Field, p: u64, rows: usize, cols: usize, mut c: u64) -> Matrix {
    let mut m = Matrix::zero(field, rows, cols);
    for q in 0..rows * cols {
        let digit = (c % p) as i64;
        c /= p;
        m.set(q % rows, q / rows, Scalar::from_int(field, digit));
    }
    m
}

/// Every rows×cols matrix over the field, in counter order.
pub fn candidate_matrices(field: Field, rows: usize, cols: usize) -> Result<Vec<Matrix>> {
    let (p, total) = enum_guard(field, rows * cols)?;
    Ok((0..total).map(|c| matrix_from_counter(field, p, rows, cols, c)).collect())
}

/// All embedding tensors on a verified representation over a small prime
/// field, by exhausting every n×m matrix and keeping those whose defining
/// equation holds. Candidates walk in counter order, so the result order
/// is stable.
pub fn enumerate_ets(rep: &Representation) -> Result<Vec<Matrix>> {
    let carrier = rep.check_representation()?;
    if !carrier.passed() {
        return Err(Error::UnverifiedRepresentation(format!(
            "carrier fails: {}",
            carrier.first_failure().unwrap_or("unknown check")
        )));
    }
    let n = rep.algebra().dim();
    let m = rep.module_dim();
    let mut out = Vec::new();
    for t in candidate_matrices(rep.algebra().field(), n, m)? {
        let et = EmbeddingTensor::new(rep.clone(), t.clone())?;
        if et.check()?.passed() {
            out.push(t);
        }
    }
    Ok(out)
}

/// All Nijenhuis pairs for a verified embedding tensor over a small prime
/// field: the counter's first m² digits fill N₀ column-major, the
/// remaining n² fill N₁.
pub fn enumerate_nijenhuis(et: &EmbeddingTensor) -> Result<Vec<NijenhuisPair>> {
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let field = et.algebra().field();
    let (p, total) = enum_guard(field, m * m + n * n)?;
    let block = p.pow((m * m) as u32);
    let mut out = Vec::new();
    for c in 0..total {
        let n0 = matrix_from_counter(field, p, m, m, c % block);
        let n1 = matrix_from_counter(field, p, n, n, c / block);
        let pair = NijenhuisPair::new(n0, n1)?;
        if crate::deform::is_nijenhuis(et, &pair)?.passed() {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Count the kernel of a matrix over 𝔽p by testing every vector. The
/// count is p^(nullity), giving a rank oracle that shares no code with
/// row reduction.
pub fn kernel_count(m: &Matrix) -> Result<u64> {
    let (p, total) = enum_guard(m.field(), m.cols())?;
    let mut count = 0;
    for c in 0..total {
        let v: Vec<Scalar> = {
            let mut c = c;
            (0..m.cols())
                .map(|_| {
                    let d = (c % p) as i64;
                    c /= p;
                    Scalar::from_int(m.field(), d)
                })
                .collect()
        };
        if crate::linalg::vec_is_zero(&m.mul_vec(&v)?) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn generator_stream_is_frozen() {
        // First outputs from seed 1, pinned so any change to the generator
        // is caught.
        let mut lcg = Lcg::new(1);
        let first: Vec<u32> = (0..4).map(|_| lcg.next_u31()).collect();
        assert_eq!(first, vec![908834774, 1093944153, 1392341196, 822192870]);
        assert_eq!(GENERATOR_ID, "lcg64-mmix-high31");
    }

    #[test]
    fn shape_grammar() {
        use std::str::FromStr;
        assert_eq!(ShapeSpec::from_str("matrix:2x3").unwrap(), ShapeSpec::Matrix { rows: 2, cols: 3 });
        assert_eq!(ShapeSpec::from_str("skew:4").unwrap(), ShapeSpec::Skew { dim: 4 });
        assert_eq!(ShapeSpec::from_str("triple:3,2").unwrap(), ShapeSpec::Triple { n: 3, m: 2 });
        for bad in ["matrix:2", "skew:x", "triple:3", "cube:2", "matrix:2x3x4", ""] {
            assert!(ShapeSpec::from_str(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn random_instances_are_deterministic_and_in_range() {
        let f3 = Field::fp(3).unwrap();
        let a = random_matrix(&mut Lcg::new(7), f3, 3, 3);
        let b = random_matrix(&mut Lcg::new(7), f3, 3, 3);
        assert_eq!(a, b);
        let q = random_matrix(&mut Lcg::new(7), Field::Q, 4, 4);
        for s in q.as_slice() {
            let txt = s.to_string();
            assert!(["-2", "-1", "0", "1", "2"].contains(&txt.as_str()), "{txt}");
        }
        let t = random_skew_table(&mut Lcg::new(9), f3, 3).unwrap();
        let t2 = random_skew_table(&mut Lcg::new(9), f3, 3).unwrap();
        assert_eq!(t.entries().collect::<Vec<_>>(), t2.entries().collect::<Vec<_>>());
    }

    #[test]
    fn counter_order_is_column_major_little_endian() {
        let f3 = Field::fp(3).unwrap();
        let c = candidate_matrices(f3, 2, 2).unwrap();
        assert_eq!(c.len(), 81);
        // Counter 1 sets the first digit: entry (0,0).
        assert_eq!(c[1].as_slice()[0].to_string(), "1");
        assert!(c[1].as_slice()[1..].iter().all(|s| s.is_zero()));
        // Counter 3 sets the second digit: column-major → entry (1,0).
        assert_eq!(c[3].col(0)[1].to_string(), "1");
        assert!(c[3].col(1).iter().all(|s| s.is_zero()));
        // Counter 9 sets the third digit: entry (0,1).
        assert_eq!(c[9].col(1)[0].to_string(), "1");
    }

    #[test]
    fn guards_reject_oversized_and_rational_walks() {
        assert!(matches!(candidate_matrices(Field::Q, 1, 1), Err(Error::TooLarge(_))));
        assert!(matches!(
            candidate_matrices(Field::fp(7).unwrap(), 1, 1),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            candidate_matrices(Field::fp(5).unwrap(), 3, 3),
            Err(Error::TooLarge(_))
        ));
        assert!(candidate_matrices(Field::fp(2).unwrap(), 4, 5).is_ok());
    }

    #[test]
    fn et_census_matches_frozen_f2_result() {
        // Over 𝔽₂ on the two-dimensional nonabelian algebra with the
        // adjoint action there are exactly 5 embedding tensors; frozen from
        // the census in the tensor module's tests.
        let alg = fixtures::aff1().reduce_mod(2).unwrap();
        let rep = Representation::adjoint(&alg).unwrap();
        let ets = enumerate_ets(&rep).unwrap();
        assert_eq!(ets.len(), 5);
        // The zero tensor is always first.
        assert!(ets[0].is_zero());
    }

    #[test]
    fn nijenhuis_census_runs_on_identity_tensor() {
        let alg = fixtures::aff1().reduce_mod(2).unwrap();
        let rep = Representation::adjoint(&alg).unwrap();
        let et = EmbeddingTensor::new(rep, Matrix::identity(Field::fp(2).unwrap(), 2)).unwrap();
        let pairs = enumerate_nijenhuis(&et).unwrap();
        // (0,0) and (id,id) are always present.
        assert!(pairs.iter().any(|p| p.n0().is_zero() && p.n1().is_zero()));
        assert!(pairs
            .iter()
            .any(|p| *p.n0() == Matrix::identity(Field::fp(2).unwrap(), 2)
                && *p.n1() == Matrix::identity(Field::fp(2).unwrap(), 2)));
        // Census size is frozen (cross-checked against an independent
        // brute force): any change to the conditions shows here.
        assert_eq!(pairs.len(), 35);
    }

    #[test]
    fn kernel_count_agrees_with_row_reduction() {
        let f5 = Field::fp(5).unwrap();
        let mut lcg = Lcg::new(1234);
        for rows in 1..=3 {
            for _ in 0..5 {
                let m = random_matrix(&mut lcg, f5, rows, 3);
                let count = kernel_count(&m).unwrap();
                let nullity = 3 - m.rank();
                assert_eq!(count, 5u64.pow(nullity as u32));
            }
        }
    }
}
