//! Deformations of an embedding tensor: first-order and formal
//! deformations, Nijenhuis operator pairs, triviality witnesses, and the
//! rigidity criterion.
//!
//! A deformation datum reuses `TwoCochain` with (v, w) = (m, n): θ deforms
//! the tensor, ω the bracket, and ν the action. An order-L formal
//! deformation is a list of L such terms; the deformed structure is
//!
//!   T_λ = T + λθ₁ + …,  [x,y]_λ = [x,y] + λω₁(x,y) + …,
//!   ρ_λ(x) = ρ(x) + λν₁(x) + …
//!
//! and each structure axiom becomes a family of conditions, one per power
//! of λ, obtained by convolving the homogeneous pieces. Degree 0 reproduces
//! the base axioms; for an order-1 datum the conditions stop at λ³.
//! `check_first_order` evaluates exactly those nine (three axioms × three
//! degrees).

use crate::cohomology::{self, TwoCochain};
use crate::error::{Error, Result};
use crate::et::EmbeddingTensor;
use crate::etrep::EtRepresentation;
use crate::linalg::{self, Matrix};
use crate::rep::flat;
use crate::report::{CheckBuilder, VerificationReport};
use crate::scalar::Scalar;

/// Require the cochain to have the deformation shape (v, w) = (m, n).
pub fn check_deformation_shape(et: &EmbeddingTensor, z: &TwoCochain) -> Result<()> {
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    if z.dims() != (n, m, m, n) {
        return Err(Error::ShapeError(format!(
            "deformation datum has dimensions {:?}, expected (n, m, v, w) = ({n}, {m}, {m}, {n})",
            z.dims()
        )));
    }
    if z.field() != et.algebra().field() {
        return Err(Error::FieldMismatch(format!(
            "datum over {}, structure over {}",
            z.field(),
            et.algebra().field()
        )));
    }
    Ok(())
}

/// An order-L formal deformation: term d (1-based) is the coefficient of
/// λ^d.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalDeformation {
    terms: Vec<TwoCochain>,
}

impl FormalDeformation {
    pub fn new(et: &EmbeddingTensor, terms: Vec<TwoCochain>) -> Result<FormalDeformation> {
        for z in &terms {
            check_deformation_shape(et, z)?;
        }
        Ok(FormalDeformation { terms })
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }
    pub fn terms(&self) -> &[TwoCochain] {
        &self.terms
    }
}

fn gate_et(et: &EmbeddingTensor) -> Result<()> {
    let base = et.check()?;
    if !base.passed() {
        return Err(Error::NotAnEmbeddingTensor(format!(
            "base tensor fails: {}",
            base.first_failure().unwrap_or("unknown check")
        )));
    }
    Ok(())
}

/// Homogeneous pieces of the deformed structure, degree 0 being the base.
struct Conv<'a> {
    et: &'a EmbeddingTensor,
    terms: &'a [TwoCochain],
    n: usize,
    m: usize,
}

impl<'a> Conv<'a> {
    fn new(et: &'a EmbeddingTensor, terms: &'a [TwoCochain]) -> Conv<'a> {
        Conv { et, terms, n: et.algebra().dim(), m: et.rep().module_dim() }
    }

    fn f(&self) -> crate::scalar::Field {
        self.et.algebra().field()
    }

    /// T_d as a matrix.
    fn t_mat(&self, d: usize) -> Option<&Matrix> {
        if d == 0 {
            Some(self.et.tensor())
        } else {
            self.terms.get(d - 1).map(|z| z.theta())
        }
    }

    /// ω_d(u, v) as a vector in the algebra; zero beyond the order.
    fn omega(&self, d: usize, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if d == 0 {
            self.et.algebra().bracket(u, v)
        } else if let Some(z) = self.terms.get(d - 1) {
            Ok(z.omega_vec(u, v))
        } else {
            Ok(linalg::vec_zero(self.f(), self.n))
        }
    }

    /// ν_d(u) as an m×m matrix; zero beyond the order.
    fn nu_mat(&self, d: usize, u: &[Scalar]) -> Result<Matrix> {
        if d == 0 {
            return self.et.rep().rho_of(u);
        }
        let mut out = Matrix::zero(self.f(), self.m, self.m);
        if let Some(z) = self.terms.get(d - 1) {
            for (c, mt) in u.iter().zip(z.nu()) {
                if !c.is_zero() {
                    out = out.add(&mt.scale(c)?)?;
                }
            }
        }
        Ok(out)
    }

    fn t_col(&self, d: usize, k: usize) -> Vec<Scalar> {
        match self.t_mat(d) {
            Some(t) => t.col(k),
            None => linalg::vec_zero(self.f(), self.n),
        }
    }

    fn t_apply(&self, d: usize, u: &[Scalar]) -> Result<Vec<Scalar>> {
        match self.t_mat(d) {
            Some(t) => t.mul_vec(u),
            None => Ok(linalg::vec_zero(self.f(), self.n)),
        }
    }

    /// Compositions a+b+c = d with every index ≤ the largest meaningful
    /// degree (base order); indices beyond the order contribute zero and
    /// are skipped.
    fn splits(&self, d: usize) -> Vec<(usize, usize, usize)> {
        let top = self.terms.len();
        let mut out = Vec::new();
        for a in 0..=d.min(top) {
            for b in 0..=(d - a).min(top) {
                let c = d - a - b;
                if c <= top {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    /// Degree-d piece of the tensor equation on module basis pair (k, l).
    fn tensor_residual(&self, d: usize, k: usize, l: usize) -> Result<Vec<Scalar>> {
        let f = self.f();
        let fl = linalg::basis_vec(f, self.m, l);
        let mut res = linalg::vec_zero(f, self.n);
        for (a, b, c) in self.splits(d) {
            let tbk = self.t_col(b, k);
            let tcl = self.t_col(c, l);
            res = linalg::vec_add(&res, &self.omega(a, &tbk, &tcl)?);
            let tck = self.t_col(c, k);
            let inner = self.nu_mat(b, &tck)?.mul_vec(&fl)?;
            res = linalg::vec_sub(&res, &self.t_apply(a, &inner)?);
        }
        Ok(res)
    }

    /// Degree-d piece of the four-variable bracket identity.
    fn bracket_residual(
        &self,
        d: usize,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
        t: &[Scalar],
    ) -> Result<Vec<Scalar>> {
        let f = self.f();
        let mut res = linalg::vec_zero(f, self.n);
        let cyc: [(&[Scalar], &[Scalar], &[Scalar], &[Scalar]); 4] =
            [(x, y, z, t), (y, z, t, x), (z, t, x, y), (t, x, y, z)];
        for (a, b, c) in self.splits(d) {
            let xz = self.omega(b, x, z)?;
            let yt = self.omega(c, y, t)?;
            res = linalg::vec_add(&res, &self.omega(a, &xz, &yt)?);
            for &(p, q, r, s) in &cyc {
                let pq = self.omega(c, p, q)?;
                let pqr = self.omega(b, &pq, r)?;
                res = linalg::vec_sub(&res, &self.omega(a, &pqr, s)?);
            }
        }
        Ok(res)
    }

    /// Degree-d piece of the action law, as an m×m matrix.
    fn action_residual(
        &self,
        d: usize,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> Result<Matrix> {
        let f = self.f();
        let mut res = Matrix::zero(f, self.m, self.m);
        for (a, b, c) in self.splits(d) {
            let xy = self.omega(c, x, y)?;
            let xyz = self.omega(b, &xy, z)?;
            res = res.add(&self.nu_mat(a, &xyz)?)?;
            res = res.sub(&self.nu_mat(a, x)?.mul(&self.nu_mat(b, y)?)?.mul(&self.nu_mat(c, z)?)?)?;
            res = res.add(&self.nu_mat(a, z)?.mul(&self.nu_mat(b, x)?)?.mul(&self.nu_mat(c, y)?)?)?;
            let zx = self.omega(c, z, x)?;
            res = res.sub(&self.nu_mat(a, y)?.mul(&self.nu_mat(b, &zx)?)?)?;
            let yz = self.omega(b, y, z)?;
            res = res.add(&self.nu_mat(a, &yz)?.mul(&self.nu_mat(c, x)?)?)?;
        }
        Ok(res)
    }
}

/// Evaluate the three convolution families for the given degrees, pushing
/// one named check per (axiom, degree).
fn convolution_checks(
    et: &EmbeddingTensor,
    terms: &[TwoCochain],
    degrees: impl Iterator<Item = usize>,
    report: &mut VerificationReport,
) -> Result<()> {
    let conv = Conv::new(et, terms);
    let f = et.algebra().field();
    let n = conv.n;
    let m = conv.m;
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| linalg::basis_vec(f, n, i)).collect();
    let zero_mm = Matrix::zero(f, m, m);
    let zero_n = linalg::vec_zero(f, n);
    for d in degrees {
        let mut tensor = CheckBuilder::new(format!("tensor equation (lambda^{d})"));
        for k in 0..m {
            for l in 0..m {
                tensor.record(&[k, l], &conv.tensor_residual(d, k, l)?, &zero_n);
            }
        }
        report.checks.push(tensor.finish());

        let mut bracket = CheckBuilder::new(format!("bracket identity (lambda^{d})"));
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let r = conv.bracket_residual(d, &basis[x], &basis[y], &basis[z], &basis[t])?;
                        bracket.record(&[x, y, z, t], &r, &zero_n);
                    }
                }
            }
        }
        report.checks.push(bracket.finish());

        let mut action = CheckBuilder::new(format!("action law (lambda^{d})"));
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let r = conv.action_residual(d, &basis[x], &basis[y], &basis[z])?;
                    action.record(&[x, y, z], flat(&r), flat(&zero_mm));
                }
            }
        }
        report.checks.push(action.finish());
    }
    Ok(())
}

/// Check that (T+λθ, [,]+λω, ρ+λν) satisfies all structure axioms as
/// polynomial identities in λ: nine conditions, three per degree λ¹..λ³.
/// The λ¹ group coincides with the cocycle conditions for adjoint-shaped
/// coefficients.
pub fn check_first_order(et: &EmbeddingTensor, z: &TwoCochain) -> Result<VerificationReport> {
    gate_et(et)?;
    check_deformation_shape(et, z)?;
    let mut report = VerificationReport::new(format!(
        "first-order deformation (n={}, m={} over {})",
        et.algebra().dim(),
        et.rep().module_dim(),
        et.algebra().field()
    ));
    let terms = [z.clone()];
    convolution_checks(et, &terms, 1..=3, &mut report)?;
    Ok(report)
}

/// Check an order-L formal deformation up to the given λ-degree
/// (inclusive). Degree 0 reproduces the base structure axioms; degrees
/// beyond 3L vanish identically.
pub fn check_formal(
    et: &EmbeddingTensor,
    def: &FormalDeformation,
    max_degree: usize,
) -> Result<VerificationReport> {
    gate_et(et)?;
    let mut report = VerificationReport::new(format!(
        "formal deformation of order {} (degrees 0..={max_degree})",
        def.order()
    ));
    report.notes.push("degree 0 reproduces the base structure axioms".into());
    convolution_checks(et, def.terms(), 0..=max_degree, &mut report)?;
    Ok(report)
}

/// A pair of operators (N₀: M → M, N₁: 𝔤 → 𝔤).
#[derive(Debug, Clone, PartialEq)]
pub struct NijenhuisPair {
    n0: Matrix,
    n1: Matrix,
}

impl NijenhuisPair {
    pub fn new(n0: Matrix, n1: Matrix) -> Result<NijenhuisPair> {
        if n0.rows() != n0.cols() || n1.rows() != n1.cols() {
            return Err(Error::ShapeError("Nijenhuis operators must be square".into()));
        }
        if n0.field() != n1.field() {
            return Err(Error::FieldMismatch("operator pair across fields".into()));
        }
        Ok(NijenhuisPair { n0, n1 })
    }

    pub fn n0(&self) -> &Matrix {
        &self.n0
    }
    pub fn n1(&self) -> &Matrix {
        &self.n1
    }

    pub fn reduce_mod(&self, p: u64) -> Result<NijenhuisPair> {
        NijenhuisPair::new(self.n0.reduce_mod(p)?, self.n1.reduce_mod(p)?)
    }
}

fn pair_shape(et: &EmbeddingTensor, pair: &NijenhuisPair) -> Result<()> {
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    if pair.n0.rows() != m || pair.n1.rows() != n {
        return Err(Error::ShapeError(format!(
            "operator shapes ({}, {}) do not match (m, n) = ({m}, {n})",
            pair.n0.rows(),
            pair.n1.rows()
        )));
    }
    if pair.n0.field() != et.algebra().field() {
        return Err(Error::FieldMismatch("operator pair over a different field".into()));
    }
    Ok(())
}

/// The deformed bracket [x,y]_N = [N₁x, y] + [x, N₁y] − N₁[x, y] on basis
/// pairs, as a vector.
fn deformed_bracket(et: &EmbeddingTensor, n1: &Matrix, i: usize, j: usize) -> Result<Vec<Scalar>> {
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let ei = linalg::basis_vec(f, n, i);
    let ej = linalg::basis_vec(f, n, j);
    let a = alg.bracket(&n1.col(i), &ej)?;
    let b = alg.bracket(&ei, &n1.col(j))?;
    let c = n1.mul_vec(&alg.bracket_basis(i, j))?;
    Ok(linalg::vec_sub(&linalg::vec_add(&a, &b), &c))
}

/// The deformed action ν_N(e_i) = ρ(N₁e_i) + ρ(e_i)N₀ − N₀ρ(e_i).
fn deformed_action(et: &EmbeddingTensor, pair: &NijenhuisPair, i: usize) -> Result<Matrix> {
    let rho = et.rep().rho();
    et.rep()
        .rho_of(&pair.n1.col(i))?
        .add(&rho[i].mul(&pair.n0)?)?
        .sub(&pair.n0.mul(&rho[i])?)
}

/// Verify the three Nijenhuis conditions:
///   (i)  the image of T N₀ − N₁ T lies in the kernel of N₁,
///   (ii) N₁([x,y]_N) = [N₁x, N₁y],
///   (iii) N₀(ν_N(x) m) = ρ(N₁x)(N₀ m).
pub fn is_nijenhuis(et: &EmbeddingTensor, pair: &NijenhuisPair) -> Result<VerificationReport> {
    gate_et(et)?;
    pair_shape(et, pair)?;
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let mut report = VerificationReport::new(format!(
        "Nijenhuis pair (n={n}, m={m} over {f})"
    ));

    // (i) via an image basis: the pivot columns of the defect span its
    // image; each must be annihilated by N₁.
    let defect = et.tensor().mul(&pair.n0)?.sub(&pair.n1.mul(et.tensor())?)?;
    let mut kernel = CheckBuilder::new("kernel condition");
    let zero_n = linalg::vec_zero(f, n);
    for &c in &defect.rref().pivot_cols {
        kernel.record(&[c], &pair.n1.mul_vec(&defect.col(c))?, &zero_n);
    }
    report.checks.push(kernel.finish());

    let mut bracket = CheckBuilder::new("bracket condition");
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = pair.n1.mul_vec(&deformed_bracket(et, &pair.n1, i, j)?)?;
            let rhs = alg.bracket(&pair.n1.col(i), &pair.n1.col(j))?;
            bracket.record(&[i, j], &lhs, &rhs);
        }
    }
    report.checks.push(bracket.finish());

    let mut action = CheckBuilder::new("action condition");
    for i in 0..n {
        let lhs = pair.n0.mul(&deformed_action(et, pair, i)?)?;
        let rhs = et.rep().rho_of(&pair.n1.col(i))?.mul(&pair.n0)?;
        action.record(&[i], flat(&lhs), flat(&rhs));
    }
    report.checks.push(action.finish());
    Ok(report)
}

/// The first-order deformation induced by a Nijenhuis pair:
/// θ = T N₀ − N₁ T, ω = [·,·]_N, ν = ν_N.
pub fn nijenhuis_to_deformation(
    et: &EmbeddingTensor,
    pair: &NijenhuisPair,
) -> Result<TwoCochain> {
    let checked = is_nijenhuis(et, pair)?;
    if !checked.passed() {
        return Err(Error::NotNijenhuis(format!(
            "pair fails {}",
            checked.first_failure().unwrap_or("a Nijenhuis condition")
        )));
    }
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let theta = et.tensor().mul(&pair.n0)?.sub(&pair.n1.mul(et.tensor())?)?;
    let mut omega = Vec::with_capacity(cohomology::pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            omega.push(deformed_bracket(et, &pair.n1, i, j)?);
        }
    }
    let nu = (0..n).map(|i| deformed_action(et, pair, i)).collect::<Result<Vec<_>>>()?;
    TwoCochain::new(f, n, m, m, n, theta, omega, nu)
}

/// Verify that (id + λN₀, id + λN₁) is a morphism from the deformed
/// structure to the base one, witnessing triviality of the deformation:
/// the λ-expansions of the three morphism equations, plus the three
/// auxiliary identities obtained by eliminating (θ, ω, ν) from the λ²
/// components.
pub fn check_trivial_morphism(
    et: &EmbeddingTensor,
    pair: &NijenhuisPair,
    z: &TwoCochain,
) -> Result<VerificationReport> {
    gate_et(et)?;
    pair_shape(et, pair)?;
    check_deformation_shape(et, z)?;
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let rho = et.rep().rho();
    let mut report = VerificationReport::new(format!(
        "triviality morphism (n={n}, m={m} over {f})"
    ));
    report.notes.push(
        "auxiliary identities are evaluated in the form obtained from the morphism expansion; \
         a stray occurrence of the base tensor in their printed form does not survive the \
         expansion and is omitted"
            .into(),
    );

    let t = et.tensor();
    let defect = t.mul(&pair.n0)?.sub(&pair.n1.mul(t)?)?;

    let mut c = CheckBuilder::new("morphism tensor (lambda^1)");
    c.record(&[], flat(&defect), flat(z.theta()));
    report.checks.push(c.finish());

    let mut c = CheckBuilder::new("morphism tensor (lambda^2)");
    let zero_nm = Matrix::zero(f, n, m);
    c.record(&[], flat(&pair.n1.mul(z.theta())?), flat(&zero_nm));
    report.checks.push(c.finish());

    let mut l1 = CheckBuilder::new("morphism bracket (lambda^1)");
    let mut l2 = CheckBuilder::new("morphism bracket (lambda^2)");
    for i in 0..n {
        for j in (i + 1)..n {
            let omega_ij = z.omega_basis(i, j);
            let lhs1 = linalg::vec_add(&pair.n1.mul_vec(&alg.bracket_basis(i, j))?, &omega_ij);
            let ei = linalg::basis_vec(f, n, i);
            let ej = linalg::basis_vec(f, n, j);
            let rhs1 = linalg::vec_add(
                &alg.bracket(&pair.n1.col(i), &ej)?,
                &alg.bracket(&ei, &pair.n1.col(j))?,
            );
            l1.record(&[i, j], &lhs1, &rhs1);
            let lhs2 = pair.n1.mul_vec(&omega_ij)?;
            let rhs2 = alg.bracket(&pair.n1.col(i), &pair.n1.col(j))?;
            l2.record(&[i, j], &lhs2, &rhs2);
        }
    }
    report.checks.push(l1.finish());
    report.checks.push(l2.finish());

    let mut a1 = CheckBuilder::new("morphism action (lambda^1)");
    let mut a2 = CheckBuilder::new("morphism action (lambda^2)");
    for i in 0..n {
        let lhs1 = pair.n0.mul(&rho[i])?.add(&z.nu()[i])?;
        let rhs1 = rho[i].mul(&pair.n0)?.add(&et.rep().rho_of(&pair.n1.col(i))?)?;
        a1.record(&[i], flat(&lhs1), flat(&rhs1));
        let lhs2 = pair.n0.mul(&z.nu()[i])?;
        let rhs2 = et.rep().rho_of(&pair.n1.col(i))?.mul(&pair.n0)?;
        a2.record(&[i], flat(&lhs2), flat(&rhs2));
    }
    report.checks.push(a1.finish());
    report.checks.push(a2.finish());

    let mut c = CheckBuilder::new("auxiliary tensor identity");
    c.record(&[], flat(&pair.n1.mul(&defect)?), flat(&zero_nm));
    report.checks.push(c.finish());

    let mut aux_b = CheckBuilder::new("auxiliary bracket identity");
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = pair.n1.mul_vec(&deformed_bracket(et, &pair.n1, i, j)?)?;
            let rhs = alg.bracket(&pair.n1.col(i), &pair.n1.col(j))?;
            aux_b.record(&[i, j], &lhs, &rhs);
        }
    }
    report.checks.push(aux_b.finish());

    let mut aux_a = CheckBuilder::new("auxiliary action identity");
    for i in 0..n {
        let lhs = pair.n0.mul(&deformed_action(et, pair, i)?)?;
        let rhs = et.rep().rho_of(&pair.n1.col(i))?.mul(&pair.n0)?;
        aux_a.record(&[i], flat(&lhs), flat(&rhs));
    }
    report.checks.push(aux_a.finish());
    Ok(report)
}

/// Decide whether two first-order deformation data differ by the
/// coboundary of a pair (φ₁: M → M, ψ₁: 𝔤 → 𝔤) in the adjoint-shaped
/// complex; on success the witness is returned as a one-cochain with
/// b₀ = φ₁ and b₁ = ψ₁.
pub fn first_order_cohomologous(
    et: &EmbeddingTensor,
    z1: &TwoCochain,
    z2: &TwoCochain,
) -> Result<Option<cohomology::OneCochain>> {
    gate_et(et)?;
    check_deformation_shape(et, z1)?;
    check_deformation_shape(et, z2)?;
    let er = EtRepresentation::adjoint_shaped(et);
    cohomology::extensions_equivalent(et, &er, z1, z2)
}

/// Rigidity assessment via the adjoint-shaped second cohomology.
#[derive(Debug, Clone)]
pub struct RigidityReport {
    pub h2: cohomology::H2,
    /// True when the sufficient condition (vanishing H²) holds.
    pub rigid_sufficient: bool,
    pub verdict: String,
}

pub fn rigidity_report(et: &EmbeddingTensor) -> Result<RigidityReport> {
    let h2 = cohomology::h2_adjoint(et, cohomology::FormulaMode::Derived)?;
    let rigid_sufficient = h2.dim == Some(0);
    let verdict = if rigid_sufficient {
        "rigid (sufficient condition met: the second cohomology with adjoint-shaped \
         coefficients vanishes)"
            .to_string()
    } else {
        format!(
            "not decided by this criterion (the second cohomology with adjoint-shaped \
             coefficients has dimension {}; vanishing is only a sufficient condition)",
            h2.dim.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into())
        )
    };
    Ok(RigidityReport { h2, rigid_sufficient, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rep::Representation;
    use crate::scalar::Field;

    fn adjoint_id_et(alg: crate::algebra::AlgebraData) -> EmbeddingTensor {
        let n = alg.dim();
        let r = Representation::adjoint(&alg).unwrap();
        EmbeddingTensor::new(r, Matrix::identity(Field::Q, n)).unwrap()
    }

    /// Abelian line, ρ = [2], T = 0.
    fn scalar_et() -> EmbeddingTensor {
        let rep = Representation::new(
            fixtures::abelian(1),
            1,
            vec![Matrix::from_ints(Field::Q, &[&[2]])],
        )
        .unwrap();
        EmbeddingTensor::new(rep, Matrix::zero(Field::Q, 1, 1)).unwrap()
    }

    fn identity_pair(n: usize, m: usize) -> NijenhuisPair {
        NijenhuisPair::new(Matrix::identity(Field::Q, m), Matrix::identity(Field::Q, n)).unwrap()
    }

    fn zero_pair(n: usize, m: usize) -> NijenhuisPair {
        NijenhuisPair::new(Matrix::zero(Field::Q, m, m), Matrix::zero(Field::Q, n, n)).unwrap()
    }

    #[test]
    fn zero_datum_is_a_first_order_deformation() {
        for et in [adjoint_id_et(fixtures::aff1()), adjoint_id_et(fixtures::sl2()), scalar_et()] {
            let n = et.algebra().dim();
            let m = et.rep().module_dim();
            let z = TwoCochain::zero(Field::Q, n, m, m, n);
            let rep = check_first_order(&et, &z).unwrap();
            assert!(rep.passed());
            assert_eq!(rep.checks.len(), 9);
        }
    }

    #[test]
    fn identity_and_zero_pairs_run_the_full_pipeline() {
        for et in [adjoint_id_et(fixtures::aff1()), adjoint_id_et(fixtures::sl2())] {
            let n = et.algebra().dim();
            let m = et.rep().module_dim();
            for pair in [zero_pair(n, m), identity_pair(n, m)] {
                let nij = is_nijenhuis(&et, &pair).unwrap();
                assert!(nij.passed(), "Nijenhuis: {:?}", nij.first_failure());
                let z = nijenhuis_to_deformation(&et, &pair).unwrap();
                let first = check_first_order(&et, &z).unwrap();
                assert!(first.passed(), "first order: {:?}", first.first_failure());
                let triv = check_trivial_morphism(&et, &pair, &z).unwrap();
                assert!(triv.passed(), "trivial: {:?}", triv.first_failure());
            }
        }
    }

    #[test]
    fn lambda1_group_matches_adjoint_cocycle_conditions() {
        // The λ¹ residuals and the adjoint-shaped cocycle residuals are the
        // same multilinear expressions; evaluate both on seeded data and
        // compare verdicts exactly.
        let et = adjoint_id_et(fixtures::aff1());
        let er = EtRepresentation::adjoint_shaped(&et);
        let mut seed: u64 = 42;
        for _ in 0..25 {
            let coords: Vec<Scalar> = (0..TwoCochain::coord_len(2, 2, 2, 2))
                .map(|_| {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    Scalar::parse_in(Field::Q, &format!("{}", ((seed >> 33) % 5) as i64 - 2))
                        .unwrap()
                })
                .collect();
            let z = TwoCochain::from_coords(Field::Q, 2, 2, 2, 2, &coords).unwrap();
            let first = check_first_order(&et, &z).unwrap();
            let lambda1_pass = first.checks[0..3].iter().all(|c| c.passed());
            let cocycle = cohomology::is_cocycle(&et, &er, &z).unwrap();
            assert_eq!(lambda1_pass, cocycle.passed());
        }
    }

    #[test]
    fn coboundaries_of_the_adjoint_complex_pass_lambda1() {
        let et = adjoint_id_et(fixtures::sl2());
        let er = EtRepresentation::adjoint_shaped(&et);
        let mut seed: u64 = 99;
        for _ in 0..5 {
            let coords: Vec<Scalar> = (0..cohomology::OneCochain::coord_len(3, 3, 3, 3))
                .map(|_| {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    Scalar::parse_in(Field::Q, &format!("{}", ((seed >> 33) % 5) as i64 - 2))
                        .unwrap()
                })
                .collect();
            let b = cohomology::OneCochain::from_coords(Field::Q, 3, 3, 3, 3, &coords).unwrap();
            let z = cohomology::coboundary(&et, &er, &b).unwrap();
            let first = check_first_order(&et, &z).unwrap();
            assert!(first.checks[0..3].iter().all(|c| c.passed()));
        }
    }

    #[test]
    fn scalar_theta_direction_fails_exactly_at_lambda2() {
        // By hand: T = 0, ρ = [2]; the datum (θ=1, ν=0) satisfies every λ¹
        // condition but the λ² tensor equation residual is −2θ² = −2.
        let et = scalar_et();
        let z = TwoCochain::from_coords(
            Field::Q,
            1,
            1,
            1,
            1,
            &[Field::Q.one(), Field::Q.zero()],
        )
        .unwrap();
        let rep = check_first_order(&et, &z).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.first_failure(), Some("tensor equation (lambda^2)"));
        let failing = rep.checks.iter().find(|c| !c.passed()).unwrap();
        assert_eq!(failing.violations.len(), 1);
        assert_eq!(failing.violations[0].lhs[0].to_string(), "-2");
        // Everything at λ¹ and λ³ passes.
        for c in &rep.checks {
            if c.name.contains("lambda^1") || c.name.contains("lambda^3") {
                assert!(c.passed(), "{}", c.name);
            }
        }
    }

    #[test]
    fn scalar_nu_direction_is_a_trivial_deformation() {
        let et = scalar_et();
        let z = TwoCochain::from_coords(
            Field::Q,
            1,
            1,
            1,
            1,
            &[Field::Q.zero(), Field::Q.one()],
        )
        .unwrap();
        assert!(check_first_order(&et, &z).unwrap().passed());
        // Cohomologous to zero with witness b₁ = [1/2] (free b₀ chosen 0).
        let zero = TwoCochain::zero(Field::Q, 1, 1, 1, 1);
        let b = first_order_cohomologous(&et, &z, &zero).unwrap().unwrap();
        assert_eq!(b.b0().as_slice()[0].to_string(), "0");
        assert_eq!(b.b1().as_slice()[0].to_string(), "1/2");
        // And the pair (0, 1/2) witnesses triviality as a morphism.
        let pair = NijenhuisPair::new(
            Matrix::zero(Field::Q, 1, 1),
            Matrix::from_fn(Field::Q, 1, 1, |_, _| Scalar::parse_in(Field::Q, "1/2").unwrap()),
        )
        .unwrap();
        let triv = check_trivial_morphism(&et, &pair, &z).unwrap();
        assert!(triv.passed(), "failed: {:?}", triv.first_failure());

        // The θ direction is not cohologous to zero: its class is the
        // obstruction.
        let theta_dir = TwoCochain::from_coords(
            Field::Q,
            1,
            1,
            1,
            1,
            &[Field::Q.one(), Field::Q.zero()],
        )
        .unwrap();
        assert!(first_order_cohomologous(&et, &theta_dir, &zero).unwrap().is_none());
    }

    #[test]
    fn formal_checks_degree_zero_and_truncation() {
        let et = adjoint_id_et(fixtures::sl2());
        let n = et.algebra().dim();
        let m = et.rep().module_dim();
        // The identity-pair deformation extends to the formal setting with
        // a single term.
        let z = nijenhuis_to_deformation(&et, &identity_pair(n, m)).unwrap();
        let def = FormalDeformation::new(&et, vec![z]).unwrap();
        let rep = check_formal(&et, &def, 3).unwrap();
        assert!(rep.passed(), "failed: {:?}", rep.first_failure());
        assert_eq!(rep.checks.len(), 12); // degrees 0..=3, three families each

        // Degree 0 of the zero deformation reproduces the base axioms.
        let none = FormalDeformation::new(&et, vec![]).unwrap();
        let rep0 = check_formal(&et, &none, 0).unwrap();
        assert!(rep0.passed());
        assert_eq!(rep0.checks.len(), 3);
    }

    #[test]
    fn formal_failure_is_detected_at_the_right_degree() {
        let et = scalar_et();
        let bad = TwoCochain::from_coords(
            Field::Q,
            1,
            1,
            1,
            1,
            &[Field::Q.one(), Field::Q.zero()],
        )
        .unwrap();
        let def = FormalDeformation::new(&et, vec![bad]).unwrap();
        let rep = check_formal(&et, &def, 3).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.first_failure(), Some("tensor equation (lambda^2)"));
    }

    #[test]
    fn projection_operator_fails_nijenhuis_on_sl2() {
        // N₁ = diag(1,0,0), N₀ = id: [e,f]_N = −h maps to −h under N₁ but
        // [N₁e, N₁f] = 0.
        let et = adjoint_id_et(fixtures::sl2());
        let pair = NijenhuisPair::new(
            Matrix::identity(Field::Q, 3),
            Matrix::from_ints(Field::Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
        )
        .unwrap();
        let rep = is_nijenhuis(&et, &pair).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.first_failure(), Some("bracket condition"));
        assert!(matches!(
            nijenhuis_to_deformation(&et, &pair),
            Err(Error::NotNijenhuis(_))
        ));
    }

    #[test]
    fn rigidity_verdicts() {
        let rigid = rigidity_report(&adjoint_id_et(fixtures::sl2())).unwrap();
        assert!(rigid.rigid_sufficient);
        assert!(rigid.verdict.starts_with("rigid"));

        let undecided = rigidity_report(&scalar_et()).unwrap();
        assert!(!undecided.rigid_sufficient);
        assert_eq!(undecided.h2.dim, Some(1));
        assert!(undecided.verdict.starts_with("not decided"));
    }

    #[test]
    fn kernel_condition_catches_defect_leak() {
        let et = adjoint_id_et(fixtures::aff1());
        // T = id, N₀ = 0: the defect is −N₁, whose image for an invertible
        // N₁ is everything, while ker N₁ = 0.
        let pair = NijenhuisPair::new(
            Matrix::zero(Field::Q, 2, 2),
            Matrix::from_ints(Field::Q, &[&[1, 0], &[1, 1]]),
        )
        .unwrap();
        let rep = is_nijenhuis(&et, &pair).unwrap();
        assert!(!rep.checks[0].passed());
    }
}
