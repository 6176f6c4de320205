//! Representations of a skew algebra on a finite-dimensional module.
//!
//! The representation law checked here is the cubic one:
//!
//! ρ([[x,y],z]) = ρ(x)ρ(y)ρ(z) − ρ(z)ρ(x)ρ(y) + ρ(y)ρ([z,x]) − ρ([y,z])ρ(x)
//!
//! evaluated on all basis triples (it is trilinear, so basis triples
//! suffice). The adjoint action of any algebra satisfying the quadratic
//! bracket identity is the prototype example.

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{CheckBuilder, VerificationReport};
use crate::scalar::Scalar;

/// An algebra together with matrices for the action of each basis vector.
/// `rho[i]` is the `module_dim × module_dim` matrix of the action of `e_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    algebra: AlgebraData,
    module_dim: usize,
    rho: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: AlgebraData, module_dim: usize, rho: Vec<Matrix>) -> Result<Representation> {
        if !algebra.is_skew() {
            return Err(Error::NonSkewInput("representations require a skew base bracket".into()));
        }
        if rho.len() != algebra.dim() {
            return Err(Error::ShapeError(format!(
                "{} action matrices for algebra dimension {}",
                rho.len(),
                algebra.dim()
            )));
        }
        for (i, m) in rho.iter().enumerate() {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::ShapeError(format!(
                    "action matrix {i} is {}x{}, expected {module_dim}x{module_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(format!(
                    "action matrix {i} is over {}, algebra over {}",
                    m.field(),
                    algebra.field()
                )));
            }
        }
        Ok(Representation { algebra, module_dim, rho })
    }

    /// The zero action on an `m`-dimensional module.
    pub fn trivial(algebra: AlgebraData, module_dim: usize) -> Result<Representation> {
        let f = algebra.field();
        let n = algebra.dim();
        Representation::new(algebra, module_dim, vec![Matrix::zero(f, module_dim, module_dim); n])
    }

    /// The adjoint action: ρ(e_i) has [e_i, e_j] as its j-th column.
    pub fn adjoint(algebra: &AlgebraData) -> Result<Representation> {
        if !algebra.is_skew() {
            return Err(Error::NonSkewInput("adjoint action requires a skew bracket".into()));
        }
        let n = algebra.dim();
        let f = algebra.field();
        let rho = (0..n)
            .map(|i| {
                Matrix::from_fn(f, n, n, |r, c| algebra.bracket_basis(i, c)[r].clone())
            })
            .collect();
        Representation::new(algebra.clone(), n, rho)
    }

    pub fn algebra(&self) -> &AlgebraData {
        &self.algebra
    }
    pub fn module_dim(&self) -> usize {
        self.module_dim
    }
    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    /// Action matrix of an arbitrary algebra element (linear combination).
    pub fn rho_of(&self, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.algebra.dim() {
            return Err(Error::ShapeError(format!(
                "algebra vector of length {} in dimension {}",
                x.len(),
                self.algebra.dim()
            )));
        }
        let mut out = Matrix::zero(self.algebra.field(), self.module_dim, self.module_dim);
        for (coef, m) in x.iter().zip(&self.rho) {
            if coef.is_zero() {
                continue;
            }
            out = out.add(&m.scale(coef)?)?;
        }
        Ok(out)
    }

    /// ρ(x)(v) for coordinate vectors.
    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.rho_of(x)?.mul_vec(v)
    }

    /// Verify the representation law. The base algebra must itself pass its
    /// axiom check first; a failing base is an error, not a failing report.
    pub fn check_representation(&self) -> Result<VerificationReport> {
        let base = self.algebra.check_malcev()?;
        if !base.passed() {
            return Err(Error::UnverifiedAlgebra(format!(
                "base algebra fails: {}",
                base.first_failure().unwrap_or("unknown check")
            )));
        }
        let n = self.algebra.dim();
        let mut rep = VerificationReport::new(format!(
            "representation (algebra dim {n}, module dim {} over {})",
            self.module_dim,
            self.algebra.field()
        ));
        rep.checks.push(law_check(&self.algebra, &self.rho, self.module_dim, "representation law")?);
        Ok(rep)
    }

    /// Semidirect-sum algebra on 𝔤 ⊕ M with bracket
    /// [x + m, y + n] = [x, y] + ρ(x)(n) − ρ(y)(m).
    ///
    /// The table is assembled from the bilinear formula on all ordered basis
    /// pairs and then folded into skew storage; if the fold ever found an
    /// asymmetric pair it would report SemidirectNotSkew rather than emit a
    /// corrupt table.
    pub fn semidirect(&self) -> Result<AlgebraData> {
        let checked = self.check_representation()?;
        if !checked.passed() {
            return Err(Error::UnverifiedRepresentation(format!(
                "representation law fails: {}",
                checked.first_failure().unwrap_or("unknown check")
            )));
        }
        let n = self.algebra.dim();
        let m = self.module_dim;
        let f = self.algebra.field();
        let total = n + m;
        // Dense full table from the bilinear formula.
        let pair_value = |i: usize, j: usize| -> Vec<Scalar> {
            let mut out = vec![f.zero(); total];
            if i < n && j < n {
                for (k, s) in self.algebra.bracket_basis(i, j).into_iter().enumerate() {
                    out[k] = s;
                }
            } else if i < n {
                // [e_i, f_l] = ρ(e_i)(f_l)
                let l = j - n;
                for r in 0..m {
                    out[n + r] = self.rho[i][(r, l)].clone();
                }
            } else if j < n {
                // [f_k, e_j] = −ρ(e_j)(f_k)
                let k = i - n;
                for r in 0..m {
                    out[n + r] = self.rho[j][(r, k)].neg();
                }
            }
            out
        };
        let mut entries = Vec::new();
        for i in 0..total {
            for j in (i + 1)..total {
                let forward = pair_value(i, j);
                let backward = pair_value(j, i);
                if crate::linalg::vec_add(&forward, &backward).iter().any(|s| !s.is_zero()) {
                    return Err(Error::SemidirectNotSkew(format!(
                        "pair ({i},{j}) folds asymmetrically"
                    )));
                }
                entries.push((i, j, forward));
            }
        }
        AlgebraData::skew(f, total, entries)
    }

    /// Reduce algebra and action matrices mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<Representation> {
        let algebra = self.algebra.reduce_mod(p)?;
        let rho = self.rho.iter().map(|m| m.reduce_mod(p)).collect::<Result<Vec<_>>>()?;
        Representation::new(algebra, self.module_dim, rho)
    }
}

/// Flatten a matrix row-major for violation reporting.
pub(crate) fn flat(m: &Matrix) -> &[Scalar] {
    m.as_slice()
}

/// Evaluate the cubic representation law for an arbitrary family of action
/// matrices over a skew algebra. Shared by the plain representation checker
/// and the coefficient-data checkers, which run the same law for several
/// different matrix families over one algebra.
pub(crate) fn law_check(
    algebra: &AlgebraData,
    rho: &[Matrix],
    dim: usize,
    name: &str,
) -> Result<crate::report::IdentityCheck> {
    let n = algebra.dim();
    let f = algebra.field();
    let of = |x: &[Scalar]| -> Result<Matrix> {
        let mut out = Matrix::zero(f, dim, dim);
        for (coef, m) in x.iter().zip(rho) {
            if !coef.is_zero() {
                out = out.add(&m.scale(coef)?)?;
            }
        }
        Ok(out)
    };
    let mut law = CheckBuilder::new(name);
    for x in 0..n {
        for y in 0..n {
            let xy = algebra.bracket_basis(x, y);
            for z in 0..n {
                let ez = crate::linalg::basis_vec(f, n, z);
                let xxyz = algebra.bracket(&xy, &ez)?;
                let lhs = of(&xxyz)?;
                let zx = algebra.bracket_basis(z, x);
                let yz = algebra.bracket_basis(y, z);
                let t1 = rho[x].mul(&rho[y])?.mul(&rho[z])?;
                let t2 = rho[z].mul(&rho[x])?.mul(&rho[y])?;
                let t3 = rho[y].mul(&of(&zx)?)?;
                let t4 = of(&yz)?.mul(&rho[x])?;
                let rhs = t1.sub(&t2)?.add(&t3)?.sub(&t4)?;
                law.record(&[x, y, z], flat(&lhs), flat(&rhs));
            }
        }
    }
    Ok(law.finish())
}
