//! Embedding tensors: linear maps T from a module into its algebra that
//! intertwine the action with the bracket,
//!
//! [T(m), T(n)] = T( ρ(T(m))(n) )   for all m, n,
//!
//! together with the hemi-semidirect product, the graph criterion, and the
//! dialgebra products an embedding tensor induces on its module.
//!
//! The graph criterion is deliberately *not* implemented by re-checking the
//! defining equation: it embeds the graph of T into the hemi-semidirect
//! algebra and tests closure of the spanning vectors under that product.
//! The two routes agreeing on every input is one of the library's checked
//! invariants.

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::linalg::{vec_is_zero, Matrix};
use crate::rep::Representation;
use crate::report::{CheckBuilder, VerificationReport};
use crate::scalar::Scalar;

/// Which induced product to put on the module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A representation together with a candidate tensor T (rows = algebra
/// coordinates, columns = module basis).
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTensor {
    rep: Representation,
    t: Matrix,
}

impl EmbeddingTensor {
    pub fn new(rep: Representation, t: Matrix) -> Result<EmbeddingTensor> {
        if t.rows() != rep.algebra().dim() || t.cols() != rep.module_dim() {
            return Err(Error::ShapeError(format!(
                "tensor is {}x{}, expected {}x{}",
                t.rows(),
                t.cols(),
                rep.algebra().dim(),
                rep.module_dim()
            )));
        }
        if t.field() != rep.algebra().field() {
            return Err(Error::FieldMismatch(format!(
                "tensor over {}, representation over {}",
                t.field(),
                rep.algebra().field()
            )));
        }
        Ok(EmbeddingTensor { rep, t })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }
    pub fn tensor(&self) -> &Matrix {
        &self.t
    }
    pub fn algebra(&self) -> &AlgebraData {
        self.rep.algebra()
    }

    /// T applied to a module vector.
    pub fn apply(&self, m: &[Scalar]) -> Result<Vec<Scalar>> {
        self.t.mul_vec(m)
    }

    /// Check the defining equation on all module basis pairs. The carrier
    /// representation must verify first (error, not a failing report).
    pub fn check(&self) -> Result<VerificationReport> {
        let rep_ok = self.rep.check_representation()?;
        if !rep_ok.passed() {
            return Err(Error::UnverifiedRepresentation(format!(
                "carrier representation fails: {}",
                rep_ok.first_failure().unwrap_or("unknown check")
            )));
        }
        let m = self.rep.module_dim();
        let mut rep = VerificationReport::new(format!(
            "embedding tensor ({}x{} over {})",
            self.t.rows(),
            self.t.cols(),
            self.t.field()
        ));
        let mut check = CheckBuilder::new("embedding tensor equation");
        for a in 0..m {
            let ta = self.t.col(a);
            for b in 0..m {
                let tb = self.t.col(b);
                let lhs = self.algebra().bracket(&ta, &tb)?;
                let action = self.rep.rho_of(&ta)?;
                let rhs = self.t.mul_vec(&action.col(b))?;
                check.record(&[a, b], &lhs, &rhs);
            }
        }
        rep.checks.push(check.finish());
        Ok(rep)
    }

    /// Does the graph {(T(m), m)} close under the hemi-semidirect product?
    /// Evaluated by embedding the graph's spanning vectors and testing that
    /// each pairwise product lands back on the graph (algebra part equals T
    /// of the module part). Independent of [`EmbeddingTensor::check`].
    pub fn graph_is_subalgebra(&self) -> Result<bool> {
        let hemi = hemi_semidirect(&self.rep)?;
        let n = self.algebra().dim();
        let m = self.rep.module_dim();
        let f = self.t.field();
        let embed = |k: usize| -> Vec<Scalar> {
            let mut v = vec![f.zero(); n + m];
            for (r, s) in self.t.col(k).into_iter().enumerate() {
                v[r] = s;
            }
            v[n + k] = f.one();
            v
        };
        for k in 0..m {
            let u = embed(k);
            for l in 0..m {
                let w = hemi.bracket(&u, &embed(l))?;
                let module_part: Vec<Scalar> = w[n..].to_vec();
                let image = self.t.mul_vec(&module_part)?;
                let algebra_part = &w[..n];
                if algebra_part != &image[..] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The product the tensor induces on its module:
    /// left  [m, n] = ρ(T(m))(n), right [m, n] = ρ(T(n))(m).
    /// Requires the defining equation to hold.
    pub fn induce_dialgebra(&self, side: Side) -> Result<AlgebraData> {
        let check = self.check()?;
        if !check.passed() {
            return Err(Error::NotAnEmbeddingTensor(format!(
                "defining equation fails on {} basis pairs",
                check.checks[0].violations.len()
            )));
        }
        let m = self.rep.module_dim();
        let f = self.t.field();
        let mut entries = Vec::new();
        for k in 0..m {
            let action = self.rep.rho_of(&self.t.col(k))?;
            for l in 0..m {
                let row = action.col(l);
                if vec_is_zero(&row) {
                    continue;
                }
                match side {
                    Side::Left => entries.push((k, l, row)),
                    Side::Right => entries.push((l, k, row)),
                }
            }
        }
        AlgebraData::full(f, m, entries)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<EmbeddingTensor> {
        EmbeddingTensor::new(self.rep.reduce_mod(p)?, self.t.reduce_mod(p)?)
    }
}

/// The hemi-semidirect product on 𝔤 ⊕ M:
/// [x + m, y + n] = [x, y] + ρ(x)(n). Not antisymmetric (the module only
/// feels the left factor), hence a full table.
pub fn hemi_semidirect(r: &Representation) -> Result<AlgebraData> {
    let rep_ok = r.check_representation()?;
    if !rep_ok.passed() {
        return Err(Error::UnverifiedRepresentation(format!(
            "carrier representation fails: {}",
            rep_ok.first_failure().unwrap_or("unknown check")
        )));
    }
    let n = r.algebra().dim();
    let m = r.module_dim();
    let f = r.algebra().field();
    let total = n + m;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let base = r.algebra().bracket_basis(i, j);
            if !vec_is_zero(&base) {
                let mut row = vec![f.zero(); total];
                row[..n].clone_from_slice(&base);
                entries.push((i, j, row));
            }
        }
        // [e_i, f_l] = ρ(e_i)(f_l); [f_k, anything] has no bracket part and
        // no action part, so those rows stay zero.
        for l in 0..m {
            let col = r.rho()[i].col(l);
            if !vec_is_zero(&col) {
                let mut row = vec![f.zero(); total];
                row[n..].clone_from_slice(&col);
                entries.push((i, n + l, row));
            }
        }
    }
    AlgebraData::full(f, total, entries)
}
