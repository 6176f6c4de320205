//! Second cohomology of an embedding tensor with coefficients in
//! representation data, together with the abelian-extension dictionary.
//!
//! A two-cochain is a triple (θ, ω, ν) with θ: M → W linear,
//! ω: Λ²𝔤 → W alternating bilinear, and ν: 𝔤 × M → V bilinear. A
//! one-cochain is a pair (b₀: M → V, b₁: 𝔤 → W). Everything is stored
//! coordinatewise against fixed bases, so cochains form explicit
//! finite-dimensional vector spaces and the cocycle conditions and the
//! coboundary map are plain matrices; kernels, ranks and quotients then
//! reduce to row echelon computations.
//!
//! Two formula families are supported. `Derived` is the default: its
//! conditions are exactly the constraints under which the twisted-extension
//! construction satisfies every structure axiom, and under it the image of
//! the coboundary map provably lands inside the cocycle space. The
//! `StrictPrinted` family swaps one argument pair in the bracket-component
//! cocycle condition and uses variants of the coboundary component formulas
//! that are only typeable for special dimension patterns; it exists so the
//! divergence is observable, and its reports are descriptive, never gated.

use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::et::EmbeddingTensor;
use crate::etrep::EtRepresentation;
use crate::linalg::{self, Matrix};
use crate::rep::Representation;
use crate::report::{CheckBuilder, VerificationReport};
use crate::scalar::{Field, Scalar};

/// Which family of condition/coboundary formulas to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaMode {
    Derived,
    StrictPrinted,
}

/// Number of unordered pairs i < j below n.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of the pair (i, j), i < j, among all such pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// A two-cochain (θ, ω, ν) for dimensions (n, m, v, w) = (algebra, module,
/// V, W). θ is w×m; ω stores one w-vector per pair i<j in lexicographic
/// order; ν stores one v×m matrix per algebra basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCochain {
    field: Field,
    n: usize,
    m: usize,
    v: usize,
    w: usize,
    theta: Matrix,
    omega: Vec<Vec<Scalar>>,
    nu: Vec<Matrix>,
}

impl TwoCochain {
    pub fn new(
        field: Field,
        n: usize,
        m: usize,
        v: usize,
        w: usize,
        theta: Matrix,
        omega: Vec<Vec<Scalar>>,
        nu: Vec<Matrix>,
    ) -> Result<TwoCochain> {
        if theta.rows() != w || theta.cols() != m {
            return Err(Error::ShapeError(format!(
                "theta is {}x{}, expected {w}x{m}",
                theta.rows(),
                theta.cols()
            )));
        }
        if theta.field() != field {
            return Err(Error::FieldMismatch("theta field".into()));
        }
        if omega.len() != pair_count(n) {
            return Err(Error::ShapeError(format!(
                "omega has {} entries, expected {}",
                omega.len(),
                pair_count(n)
            )));
        }
        for (idx, row) in omega.iter().enumerate() {
            if row.len() != w {
                return Err(Error::ShapeError(format!(
                    "omega entry {idx} has length {}, expected {w}",
                    row.len()
                )));
            }
        }
        if nu.len() != n {
            return Err(Error::ShapeError(format!("nu has {} matrices, expected {n}", nu.len())));
        }
        for (i, mt) in nu.iter().enumerate() {
            if mt.rows() != v || mt.cols() != m {
                return Err(Error::ShapeError(format!(
                    "nu[{i}] is {}x{}, expected {v}x{m}",
                    mt.rows(),
                    mt.cols()
                )));
            }
            if mt.field() != field {
                return Err(Error::FieldMismatch(format!("nu[{i}] field")));
            }
        }
        Ok(TwoCochain { field, n, m, v, w, theta, omega, nu })
    }

    pub fn zero(field: Field, n: usize, m: usize, v: usize, w: usize) -> TwoCochain {
        TwoCochain {
            field,
            n,
            m,
            v,
            w,
            theta: Matrix::zero(field, w, m),
            omega: vec![linalg::vec_zero(field, w); pair_count(n)],
            nu: vec![Matrix::zero(field, v, m); n],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    /// (n, m, v, w).
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.n, self.m, self.v, self.w)
    }
    pub fn theta(&self) -> &Matrix {
        &self.theta
    }
    pub fn omega(&self) -> &[Vec<Scalar>] {
        &self.omega
    }
    pub fn nu(&self) -> &[Matrix] {
        &self.nu
    }

    /// ω on a basis pair, any order, diagonal = 0.
    pub fn omega_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        if i == j {
            return linalg::vec_zero(self.field, self.w);
        }
        if i < j {
            self.omega[pair_index(self.n, i, j)].clone()
        } else {
            linalg::vec_neg(&self.omega[pair_index(self.n, j, i)])
        }
    }

    /// ω on arbitrary coordinate vectors.
    pub fn omega_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = linalg::vec_zero(self.field, self.w);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let c = a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
                if !c.is_zero() {
                    let term = linalg::vec_scale(&c, &self.omega[pair_index(self.n, i, j)]);
                    out = linalg::vec_add(&out, &term);
                }
            }
        }
        out
    }

    /// ν(x, u) for an algebra coordinate vector x and module vector u.
    pub fn nu_apply(&self, x: &[Scalar], u: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut out = linalg::vec_zero(self.field, self.v);
        for (c, mt) in x.iter().zip(&self.nu) {
            if !c.is_zero() {
                out = linalg::vec_add(&out, &linalg::vec_scale(c, &mt.mul_vec(u)?));
            }
        }
        Ok(out)
    }

    /// Total coordinate count: w·m + C(n,2)·w + n·v·m.
    pub fn coord_len(n: usize, m: usize, v: usize, w: usize) -> usize {
        w * m + pair_count(n) * w + n * v * m
    }

    /// Flatten to the documented coordinate order: θ row-major, then ω
    /// pairs in lexicographic order, then ν blocks per algebra index with
    /// each block column-major.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(Self::coord_len(self.n, self.m, self.v, self.w));
        out.extend(self.theta.as_slice().iter().cloned());
        for row in &self.omega {
            out.extend(row.iter().cloned());
        }
        for mt in &self.nu {
            for c in 0..self.m {
                for r in 0..self.v {
                    out.push(mt[(r, c)].clone());
                }
            }
        }
        out
    }

    pub fn from_coords(
        field: Field,
        n: usize,
        m: usize,
        v: usize,
        w: usize,
        coords: &[Scalar],
    ) -> Result<TwoCochain> {
        let want = Self::coord_len(n, m, v, w);
        if coords.len() != want {
            return Err(Error::ShapeError(format!(
                "{} coordinates for cochain dimensions needing {want}",
                coords.len()
            )));
        }
        let mut it = coords.iter().cloned();
        let theta = Matrix::from_fn(field, w, m, |_, _| it.next().unwrap());
        // from_fn fills row-major, which matches to_coords.
        let omega = (0..pair_count(n)).map(|_| it.by_ref().take(w).collect()).collect();
        let mut nu = Vec::with_capacity(n);
        for _ in 0..n {
            let mut mt = Matrix::zero(field, v, m);
            for c in 0..m {
                for r in 0..v {
                    mt[(r, c)] = it.next().unwrap();
                }
            }
            nu.push(mt);
        }
        TwoCochain::new(field, n, m, v, w, theta, omega, nu)
    }

    pub fn add(&self, other: &TwoCochain) -> Result<TwoCochain> {
        self.zip(other, |a, b| a.add(b))
    }
    pub fn sub(&self, other: &TwoCochain) -> Result<TwoCochain> {
        self.zip(other, |a, b| a.sub(b))
    }
    pub fn neg(&self) -> TwoCochain {
        let coords: Vec<Scalar> = self.to_coords().iter().map(Scalar::neg).collect();
        TwoCochain::from_coords(self.field, self.n, self.m, self.v, self.w, &coords).unwrap()
    }
    pub fn scale(&self, s: &Scalar) -> Result<TwoCochain> {
        let coords: Vec<Scalar> = self.to_coords().iter().map(|a| s.mul(a)).collect();
        TwoCochain::from_coords(self.field, self.n, self.m, self.v, self.w, &coords)
    }
    pub fn is_zero(&self) -> bool {
        self.to_coords().iter().all(Scalar::is_zero)
    }

    fn zip(
        &self,
        other: &TwoCochain,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<TwoCochain> {
        if self.dims() != other.dims() {
            return Err(Error::ShapeError("cochain dimension mismatch".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("cochain field mismatch".into()));
        }
        let coords: Vec<Scalar> =
            self.to_coords().iter().zip(other.to_coords().iter()).map(|(a, b)| f(a, b)).collect();
        TwoCochain::from_coords(self.field, self.n, self.m, self.v, self.w, &coords)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<TwoCochain> {
        let coords: Vec<Scalar> =
            self.to_coords().iter().map(|s| s.reduce_mod(p)).collect::<Result<_>>()?;
        TwoCochain::from_coords(Field::fp(p)?, self.n, self.m, self.v, self.w, &coords)
    }
}

/// A one-cochain (b₀: M → V, b₁: 𝔤 → W).
#[derive(Debug, Clone, PartialEq)]
pub struct OneCochain {
    field: Field,
    n: usize,
    m: usize,
    v: usize,
    w: usize,
    b0: Matrix,
    b1: Matrix,
}

impl OneCochain {
    pub fn new(
        field: Field,
        n: usize,
        m: usize,
        v: usize,
        w: usize,
        b0: Matrix,
        b1: Matrix,
    ) -> Result<OneCochain> {
        if b0.rows() != v || b0.cols() != m {
            return Err(Error::ShapeError(format!(
                "b0 is {}x{}, expected {v}x{m}",
                b0.rows(),
                b0.cols()
            )));
        }
        if b1.rows() != w || b1.cols() != n {
            return Err(Error::ShapeError(format!(
                "b1 is {}x{}, expected {w}x{n}",
                b1.rows(),
                b1.cols()
            )));
        }
        if b0.field() != field || b1.field() != field {
            return Err(Error::FieldMismatch("one-cochain field".into()));
        }
        Ok(OneCochain { field, n, m, v, w, b0, b1 })
    }

    pub fn zero(field: Field, n: usize, m: usize, v: usize, w: usize) -> OneCochain {
        OneCochain {
            field,
            n,
            m,
            v,
            w,
            b0: Matrix::zero(field, v, m),
            b1: Matrix::zero(field, w, n),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        (self.n, self.m, self.v, self.w)
    }
    pub fn b0(&self) -> &Matrix {
        &self.b0
    }
    pub fn b1(&self) -> &Matrix {
        &self.b1
    }

    pub fn coord_len(n: usize, m: usize, v: usize, w: usize) -> usize {
        v * m + w * n
    }

    /// b₀ row-major, then b₁ row-major.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(Self::coord_len(self.n, self.m, self.v, self.w));
        out.extend(self.b0.as_slice().iter().cloned());
        out.extend(self.b1.as_slice().iter().cloned());
        out
    }

    pub fn from_coords(
        field: Field,
        n: usize,
        m: usize,
        v: usize,
        w: usize,
        coords: &[Scalar],
    ) -> Result<OneCochain> {
        let want = Self::coord_len(n, m, v, w);
        if coords.len() != want {
            return Err(Error::ShapeError(format!(
                "{} coordinates for one-cochain dimensions needing {want}",
                coords.len()
            )));
        }
        let mut it = coords.iter().cloned();
        let b0 = Matrix::from_fn(field, v, m, |_, _| it.next().unwrap());
        let b1 = Matrix::from_fn(field, w, n, |_, _| it.next().unwrap());
        OneCochain::new(field, n, m, v, w, b0, b1)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<OneCochain> {
        OneCochain::new(
            Field::fp(p)?,
            self.n,
            self.m,
            self.v,
            self.w,
            self.b0.reduce_mod(p)?,
            self.b1.reduce_mod(p)?,
        )
    }
}

/// Require that the cochain shape matches the (et, er) pair.
fn compat(et: &EmbeddingTensor, er: &EtRepresentation, dims: (usize, usize, usize, usize), field: Field) -> Result<()> {
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    if dims != (n, m, er.dim_v(), er.dim_w()) {
        return Err(Error::ShapeError(format!(
            "cochain dimensions {:?} do not match (n, m, v, w) = ({n}, {m}, {}, {})",
            dims,
            er.dim_v(),
            er.dim_w()
        )));
    }
    if field != et.algebra().field() {
        return Err(Error::FieldMismatch(format!(
            "cochain over {}, structure over {field}",
            et.algebra().field()
        )));
    }
    Ok(())
}

/// Walk every cocycle condition tuple once, emitting (condition index,
/// tuple, lhs, rhs). Condition 0 runs over module basis pairs with values
/// in W, condition 1 over algebra basis quadruples with values in W,
/// condition 2 over algebra triples × module basis with values in V.
fn scan_conditions(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z: &TwoCochain,
    mode: FormulaMode,
    mut emit: impl FnMut(usize, &[usize], &[Scalar], &[Scalar]),
) -> Result<()> {
    compat(et, er, z.dims(), z.field())?;
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let rep = et.rep();
    let rho = rep.rho();
    let t = et.tensor();
    let rho2 = er.rho2();
    let rho1 = er.rho1();
    let rho3 = er.rho3();

    // Condition 0, on module basis pairs (k, l):
    //   ω(Tk, Tl) + ρ₂(Tk)θ(l) − ρ₂(Tl)θ(k)
    //     = θ(ρ(Tk)(f_l)) + T′(ν(Tk, f_l)) − T′(ρ₃(f_l)(θ(k)))
    for k in 0..m {
        let tk = t.col(k);
        let rho2_tk = er.rho2_of(&tk)?;
        let rho_tk = rep.rho_of(&tk)?;
        for l in 0..m {
            let tl = t.col(l);
            let theta_k = z.theta.col(k);
            let theta_l = z.theta.col(l);
            let lhs = linalg::vec_sub(
                &linalg::vec_add(&z.omega_vec(&tk, &tl), &rho2_tk.mul_vec(&theta_l)?),
                &er.rho2_of(&tl)?.mul_vec(&theta_k)?,
            );
            let nu_tk_l = z.nu_apply(&tk, &linalg::basis_vec(f, m, l))?;
            let rhs = linalg::vec_sub(
                &linalg::vec_add(
                    &z.theta.mul_vec(&rho_tk.col(l))?,
                    &er.t_prime().mul_vec(&nu_tk_l)?,
                ),
                &er.t_prime().mul_vec(&rho3[l].mul_vec(&theta_k)?)?,
            );
            emit(0, &[k, l], &lhs, &rhs);
        }
    }

    // Condition 1, on algebra basis quadruples (x, y, z, t):
    //   ω([x,z],[y,t]) + ρ₂([x,z])ω(y,t) − ρ₂([y,t])ω(x,z)
    //     = Σ_cyc [ ω([[p,q],r], s) − ρ₂(s)ω([p,q], r) + ρ₂(s)ρ₂(r)ω(p,q) ]
    // with the cyclic sum over (p,q,r,s) ∈ {(x,y,z,t),(y,z,t,x),(z,t,x,y),
    // (t,x,y,z)}. The printed variant swaps the last two arguments of the
    // leading ω term in the (z,t,x,y) block only.
    for x in 0..n {
        for y in 0..n {
            for zz in 0..n {
                for tt in 0..n {
                    let xz = alg.bracket_basis(x, zz);
                    let yt = alg.bracket_basis(y, tt);
                    let lhs = linalg::vec_sub(
                        &linalg::vec_add(
                            &z.omega_vec(&xz, &yt),
                            &er.rho2_of(&xz)?.mul_vec(&z.omega_basis(y, tt))?,
                        ),
                        &er.rho2_of(&yt)?.mul_vec(&z.omega_basis(x, zz))?,
                    );
                    let mut rhs = linalg::vec_zero(f, z.w);
                    let cyc = [(x, y, zz, tt), (y, zz, tt, x), (zz, tt, x, y), (tt, x, y, zz)];
                    for (bi, &(p, q, r, s)) in cyc.iter().enumerate() {
                        let pq = alg.bracket_basis(p, q);
                        let (lead_r, lead_s) =
                            if mode == FormulaMode::StrictPrinted && bi == 2 { (s, r) } else { (r, s) };
                        let pq_lead = alg.bracket(&pq, &linalg::basis_vec(f, n, lead_r))?;
                        let term1 = z.omega_vec(&pq_lead, &linalg::basis_vec(f, n, lead_s));
                        let term2 = rho2[s].mul_vec(&z.omega_vec(&pq, &linalg::basis_vec(f, n, r)))?;
                        let term3 = rho2[s].mul_vec(&rho2[r].mul_vec(&z.omega_basis(p, q))?)?;
                        rhs = linalg::vec_add(
                            &rhs,
                            &linalg::vec_add(&linalg::vec_sub(&term1, &term2), &term3),
                        );
                    }
                    emit(1, &[x, y, zz, tt], &lhs, &rhs);
                }
            }
        }
    }

    // Condition 2, on (x, y, z, k) with k a module basis index:
    //   ν([[x,y],z], f_k) − ρ₃(f_k)ω([x,y], z) + ρ₃(f_k)ρ₂(z)ω(x,y)
    //     = t1 − t2 + t3 − t4 with
    //   t1 = ν(x, ρ(y)ρ(z)f_k) + ρ₁(x)ν(y, ρ(z)f_k) + ρ₁(x)ρ₁(y)ν(z, f_k)
    //   t2 = ν(z, ρ(x)ρ(y)f_k) + ρ₁(z)ν(x, ρ(y)f_k) + ρ₁(z)ρ₁(x)ν(y, f_k)
    //   t3 = ν(y, ρ([z,x])f_k) + ρ₁(y)ν([z,x], f_k) − ρ₁(y)ρ₃(f_k)ω(z,x)
    //   t4 = ν([y,z], ρ(x)f_k) + ρ₁([y,z])ν(x, f_k) − ρ₃(ρ(x)f_k)ω(y,z)
    for x in 0..n {
        for y in 0..n {
            for zz in 0..n {
                let xy = alg.bracket_basis(x, y);
                let zx = alg.bracket_basis(zz, x);
                let yz = alg.bracket_basis(y, zz);
                let xxy_z = alg.bracket(&xy, &linalg::basis_vec(f, n, zz))?;
                let rho1_yz = er.rho1_of(&yz)?;
                for k in 0..m {
                    let fk = linalg::basis_vec(f, m, k);
                    let lhs = {
                        let a = z.nu_apply(&xxy_z, &fk)?;
                        let b = rho3[k]
                            .mul_vec(&z.omega_vec(&xy, &linalg::basis_vec(f, n, zz)))?;
                        let c = rho3[k].mul_vec(&rho2[zz].mul_vec(&z.omega_basis(x, y))?)?;
                        linalg::vec_add(&linalg::vec_sub(&a, &b), &c)
                    };
                    let rz_k = rho[zz].col(k);
                    let ry_k = rho[y].col(k);
                    let rx_k = rho[x].col(k);
                    let t1 = {
                        let a = z.nu[x].mul_vec(&rho[y].mul_vec(&rz_k)?)?;
                        let b = rho1[x].mul_vec(&z.nu[y].mul_vec(&rz_k)?)?;
                        let c = rho1[x].mul_vec(&rho1[y].mul_vec(&z.nu[zz].col(k))?)?;
                        linalg::vec_add(&linalg::vec_add(&a, &b), &c)
                    };
                    let t2 = {
                        let a = z.nu[zz].mul_vec(&rho[x].mul_vec(&ry_k)?)?;
                        let b = rho1[zz].mul_vec(&z.nu[x].mul_vec(&ry_k)?)?;
                        let c = rho1[zz].mul_vec(&rho1[x].mul_vec(&z.nu[y].col(k))?)?;
                        linalg::vec_add(&linalg::vec_add(&a, &b), &c)
                    };
                    let t3 = {
                        let a = z.nu[y].mul_vec(&rep.rho_of(&zx)?.col(k))?;
                        let b = rho1[y].mul_vec(&z.nu_apply(&zx, &fk)?)?;
                        let c = rho1[y].mul_vec(&rho3[k].mul_vec(&z.omega_basis(zz, x))?)?;
                        linalg::vec_sub(&linalg::vec_add(&a, &b), &c)
                    };
                    let t4 = {
                        let a = z.nu_apply(&yz, &rx_k)?;
                        let b = rho1_yz.mul_vec(&z.nu[x].col(k))?;
                        let c = er.rho3_of(&rx_k)?.mul_vec(&z.omega_basis(y, zz))?;
                        linalg::vec_sub(&linalg::vec_add(&a, &b), &c)
                    };
                    // rhs = t1 − t2 + t3 − t4
                    let rhs =
                        linalg::vec_sub(&linalg::vec_add(&linalg::vec_sub(&t1, &t2), &t3), &t4);
                    emit(2, &[x, y, zz, k], &lhs, &rhs);
                }
            }
        }
    }
    Ok(())
}

const CONDITION_NAMES: [&str; 3] = [
    "cocycle condition (tensor pairs)",
    "cocycle condition (bracket quadruples)",
    "cocycle condition (action triples)",
];

/// Full per-tuple report of the three cocycle conditions.
pub fn is_cocycle_mode(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z: &TwoCochain,
    mode: FormulaMode,
) -> Result<VerificationReport> {
    let (n, m, v, w) = z.dims();
    let mut report = VerificationReport::new(format!(
        "two-cochain (n={n}, m={m}, v={v}, w={w} over {})",
        z.field()
    ));
    let mut builders: Vec<CheckBuilder> =
        CONDITION_NAMES.iter().map(|s| CheckBuilder::new(*s)).collect();
    scan_conditions(et, er, z, mode, |cond, tuple, lhs, rhs| {
        builders[cond].record(tuple, lhs, rhs);
    })?;
    for b in builders {
        report.checks.push(b.finish());
    }
    if mode == FormulaMode::StrictPrinted {
        report.notes.push(
            "strict printed formulas in effect: the bracket-quadruple condition uses the \
             printed argument order ω([[z,t],y],x) in its third cyclic block"
                .into(),
        );
    }
    Ok(report)
}

pub fn is_cocycle(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z: &TwoCochain,
) -> Result<VerificationReport> {
    is_cocycle_mode(et, er, z, FormulaMode::Derived)
}

/// All condition values stacked into one vector; the conditions are linear
/// in the cochain, so this is a matrix application.
fn residual_stack(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z: &TwoCochain,
    mode: FormulaMode,
) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    scan_conditions(et, er, z, mode, |_, _, lhs, rhs| {
        for (a, b) in lhs.iter().zip(rhs.iter()) {
            out.push(a.sub(b));
        }
    })?;
    Ok(out)
}

/// The coboundary of a one-cochain:
///   Dθ = T′ b₀ − b₁ T
///   Dω(x, y) = ρ₂(x) b₁(y) − ρ₂(y) b₁(x) − b₁([x, y])
///   Dν(x, m) = ρ₁(x) b₀(m) − ρ₃(m) b₁(x) − b₀(ρ(x) m)
///
/// The strict printed variants replace ρ₂ by ρ₁ in the ω component (only
/// typeable when v = w) and ρ₃(m) b₁(x) by ρ₂(m) b₁(x), reading the module
/// index as an algebra index, in the ν component (only typeable when
/// m ≤ n and v = w). When a variant is not typeable the derived formula is
/// used for that component and a note records the substitution.
pub fn coboundary_mode(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    b: &OneCochain,
    mode: FormulaMode,
) -> Result<(TwoCochain, Vec<String>)> {
    compat(et, er, b.dims(), b.field())?;
    let alg = et.algebra();
    let f = alg.field();
    let (n, m, v, w) = b.dims();
    let mut notes = Vec::new();

    let theta = er.t_prime().mul(b.b0())?.sub(&b.b1().mul(et.tensor())?)?;

    let strict_omega = mode == FormulaMode::StrictPrinted && v == w;
    let strict_nu = mode == FormulaMode::StrictPrinted && m <= n && v == w;
    if mode == FormulaMode::StrictPrinted {
        if v == w {
            notes.push("strict printed ω-component formula in effect (ρ₁ acting on W)".into());
        } else {
            notes.push(format!(
                "strict printed ω-component formula is not typeable for v={v} ≠ w={w}; derived form used"
            ));
        }
        if m <= n && v == w {
            notes.push(
                "strict printed ν-component formula in effect (module indices read as algebra indices)"
                    .into(),
            );
        } else {
            notes.push(format!(
                "strict printed ν-component formula is not typeable for (m={m}, n={n}, v={v}, w={w}); derived form used"
            ));
        }
    }

    let mut omega = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            let bi = b.b1().col(i);
            let bj = b.b1().col(j);
            let (ai, aj) = if strict_omega {
                (er.rho1()[i].mul_vec(&bj)?, er.rho1()[j].mul_vec(&bi)?)
            } else {
                (er.rho2()[i].mul_vec(&bj)?, er.rho2()[j].mul_vec(&bi)?)
            };
            let bracket_term = b.b1().mul_vec(&alg.bracket_basis(i, j))?;
            omega.push(linalg::vec_sub(&linalg::vec_sub(&ai, &aj), &bracket_term));
        }
    }

    let rho = et.rep().rho();
    let mut nu = Vec::with_capacity(n);
    for i in 0..n {
        let mut mt = Matrix::zero(f, v, m);
        for k in 0..m {
            let b1_i = b.b1().col(i);
            let middle = if strict_nu {
                er.rho2()[k].mul_vec(&b1_i)?
            } else {
                er.rho3()[k].mul_vec(&b1_i)?
            };
            let col = linalg::vec_sub(
                &linalg::vec_sub(&er.rho1()[i].mul_vec(&b.b0().col(k))?, &middle),
                &b.b0().mul_vec(&rho[i].col(k))?,
            );
            for r in 0..v {
                mt[(r, k)] = col[r].clone();
            }
        }
        nu.push(mt);
    }

    Ok((TwoCochain::new(f, n, m, v, w, theta, omega, nu)?, notes))
}

pub fn coboundary(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    b: &OneCochain,
) -> Result<TwoCochain> {
    Ok(coboundary_mode(et, er, b, FormulaMode::Derived)?.0)
}

/// The matrix of the stacked cocycle conditions, one column per cochain
/// coordinate.
fn condition_matrix(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    mode: FormulaMode,
) -> Result<Matrix> {
    let f = et.algebra().field();
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let len = TwoCochain::coord_len(n, m, v, w);
    let rows = m * m * w + n * n * n * n * w + n * n * n * m * v;
    let mut cols = Vec::with_capacity(len);
    for j in 0..len {
        let mut coords = vec![f.zero(); len];
        coords[j] = f.one();
        let unit = TwoCochain::from_coords(f, n, m, v, w, &coords)?;
        let col = residual_stack(et, er, &unit, mode)?;
        debug_assert_eq!(col.len(), rows);
        cols.push(col);
    }
    Ok(linalg::from_columns(f, rows, &cols))
}

/// The matrix of the coboundary map in coordinates, one column per
/// one-cochain coordinate.
fn coboundary_matrix(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    mode: FormulaMode,
) -> Result<Matrix> {
    let f = et.algebra().field();
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let len = OneCochain::coord_len(n, m, v, w);
    let rows = TwoCochain::coord_len(n, m, v, w);
    let mut cols = Vec::with_capacity(len);
    for j in 0..len {
        let mut coords = vec![f.zero(); len];
        coords[j] = f.one();
        let unit = OneCochain::from_coords(f, n, m, v, w, &coords)?;
        let (img, _) = coboundary_mode(et, er, &unit, mode)?;
        cols.push(img.to_coords());
    }
    Ok(linalg::from_columns(f, rows, &cols))
}

/// Basis of the cocycle space (kernel of the stacked conditions).
pub fn cocycle_space(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    mode: FormulaMode,
) -> Result<Vec<TwoCochain>> {
    let f = et.algebra().field();
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let zmat = condition_matrix(et, er, mode)?;
    zmat.kernel_basis()
        .iter()
        .map(|coords| TwoCochain::from_coords(f, n, m, v, w, coords))
        .collect()
}

/// Outcome of a second-cohomology computation.
#[derive(Debug, Clone)]
pub struct H2 {
    pub dim_z2: usize,
    pub rank_coboundaries: usize,
    /// Whether every coboundary satisfied the cocycle conditions.
    pub coboundaries_contained: bool,
    /// dim Z² − rank D; absent when containment fails (strict mode only).
    pub dim: Option<usize>,
    /// Cocycles completing a basis of the coboundary space to a basis of
    /// the cocycle space; their classes form a basis of H².
    pub representatives: Vec<TwoCochain>,
    pub notes: Vec<String>,
}

fn h2_inner(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    mode: FormulaMode,
    mut notes: Vec<String>,
) -> Result<H2> {
    let f = et.algebra().field();
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());

    let zmat = condition_matrix(et, er, mode)?;
    let z_basis = zmat.kernel_basis();
    let dmat = coboundary_matrix(et, er, mode)?;
    let d_rref = dmat.rref();
    let rank_d = d_rref.rank;
    let im_basis: Vec<Vec<Scalar>> = d_rref.pivot_cols.iter().map(|&c| dmat.col(c)).collect();

    let contained = im_basis
        .iter()
        .all(|col| zmat.mul_vec(col).map(|r| linalg::vec_is_zero(&r)).unwrap_or(false));

    if !contained {
        if mode == FormulaMode::Derived {
            return Err(Error::InternalInconsistency(
                "a coboundary failed the cocycle conditions under the derived formulas".into(),
            ));
        }
        notes.push(
            "coboundary image is NOT contained in the cocycle space under the printed formulas; \
             no quotient is defined"
                .into(),
        );
        return Ok(H2 {
            dim_z2: z_basis.len(),
            rank_coboundaries: rank_d,
            coboundaries_contained: false,
            dim: None,
            representatives: Vec::new(),
            notes,
        });
    }
    if mode == FormulaMode::StrictPrinted {
        notes.push("coboundary image is contained in the cocycle space".into());
    }

    // Complete the coboundary basis to a basis of the cocycle space; the
    // completing vectors represent a basis of the quotient.
    let coord_len = TwoCochain::coord_len(n, m, v, w);
    let mut stacked: Vec<Vec<Scalar>> = im_basis.clone();
    stacked.extend(z_basis.iter().cloned());
    let completion = linalg::from_columns(f, coord_len, &stacked).rref();
    let mut representatives = Vec::new();
    for &c in &completion.pivot_cols {
        if c >= rank_d {
            representatives
                .push(TwoCochain::from_coords(f, n, m, v, w, &z_basis[c - rank_d])?);
        }
    }
    let dim = z_basis.len() - rank_d;
    debug_assert_eq!(representatives.len(), dim);
    Ok(H2 {
        dim_z2: z_basis.len(),
        rank_coboundaries: rank_d,
        coboundaries_contained: true,
        dim: Some(dim),
        representatives,
        notes,
    })
}

/// Second cohomology with coefficients in verified representation data.
pub fn h2(et: &EmbeddingTensor, er: &EtRepresentation, mode: FormulaMode) -> Result<H2> {
    let checked = er.check()?;
    if !checked.passed() {
        return Err(Error::InvalidEtRepresentation(format!(
            "coefficient data fails: {}",
            checked.first_failure().unwrap_or("unknown check")
        )));
    }
    h2_inner(et, er, mode, Vec::new())
}

/// Second cohomology with the adjoint-shaped coefficients (V, W) = (M, 𝔤).
/// These coefficients are taken as-is, without the verification gate: their
/// cocycle conditions coincide with the first-order deformation conditions
/// even when the equivariance axiom fails off the image of T.
pub fn h2_adjoint(et: &EmbeddingTensor, mode: FormulaMode) -> Result<H2> {
    let checked = et.check()?;
    if !checked.passed() {
        return Err(Error::NotAnEmbeddingTensor(format!(
            "base tensor fails: {}",
            checked.first_failure().unwrap_or("unknown check")
        )));
    }
    let er = EtRepresentation::adjoint_shaped(et);
    h2_inner(
        et,
        &er,
        mode,
        vec![
            "adjoint-shaped coefficients (V, W) = (M, 𝔤) used without the verification gate"
                .into(),
        ],
    )
}

/// An abelian extension of an embedding tensor: a bigger tensor together
/// with the kernel embeddings i₀: V → M̂, i₁: W → 𝔤̂ and the projections
/// p₀: M̂ → M, p₁: 𝔤̂ → 𝔤.
#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    hat: EmbeddingTensor,
    i0: Matrix,
    i1: Matrix,
    p0: Matrix,
    p1: Matrix,
}

impl Extension {
    pub fn new(
        hat: EmbeddingTensor,
        i0: Matrix,
        i1: Matrix,
        p0: Matrix,
        p1: Matrix,
    ) -> Result<Extension> {
        let hm = hat.rep().module_dim();
        let hn = hat.algebra().dim();
        let f = hat.algebra().field();
        for (name, mt, rows) in
            [("i0", &i0, hm), ("i1", &i1, hn)]
        {
            if mt.rows() != rows {
                return Err(Error::ShapeError(format!(
                    "{name} has {} rows, expected {rows}",
                    mt.rows()
                )));
            }
            if mt.field() != f {
                return Err(Error::FieldMismatch(format!("{name} field")));
            }
        }
        for (name, mt, cols) in [("p0", &p0, hm), ("p1", &p1, hn)] {
            if mt.cols() != cols {
                return Err(Error::ShapeError(format!(
                    "{name} has {} columns, expected {cols}",
                    mt.cols()
                )));
            }
            if mt.field() != f {
                return Err(Error::FieldMismatch(format!("{name} field")));
            }
        }
        Ok(Extension { hat, i0, i1, p0, p1 })
    }

    pub fn hat(&self) -> &EmbeddingTensor {
        &self.hat
    }
    pub fn i0(&self) -> &Matrix {
        &self.i0
    }
    pub fn i1(&self) -> &Matrix {
        &self.i1
    }
    pub fn p0(&self) -> &Matrix {
        &self.p0
    }
    pub fn p1(&self) -> &Matrix {
        &self.p1
    }
}

/// Sections σ₀: M → M̂, σ₁: 𝔤 → 𝔤̂ of the projections.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    pub sigma0: Matrix,
    pub sigma1: Matrix,
}

impl Splitting {
    /// The canonical sections of a block extension built by
    /// `extension_from_cocycle`: inclusion of the first m (resp. n)
    /// coordinates.
    pub fn canonical(field: Field, n: usize, m: usize, v: usize, w: usize) -> Splitting {
        Splitting {
            sigma0: Matrix::from_fn(field, m + v, m, |r, c| {
                if r == c { field.one() } else { field.zero() }
            }),
            sigma1: Matrix::from_fn(field, n + w, n, |r, c| {
                if r == c { field.one() } else { field.zero() }
            }),
        }
    }
}

/// Build the twisted abelian extension of (et, er) along a cocycle:
/// 𝔤̂ = 𝔤 ⊕ W with [x+w₁, y+w₂] = [x,y] + ω(x,y) + ρ₂(x)w₂ − ρ₂(y)w₁,
/// M̂ = M ⊕ V with ρ̂(x+w)(m+v) = ρ(x)m + ν(x,m) + ρ₁(x)v − ρ₃(m)w, and
/// T̂(m+v) = T(m) + θ(m) + T′(v).
pub fn extension_from_cocycle(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z: &TwoCochain,
) -> Result<Extension> {
    let report = is_cocycle(et, er, z)?;
    if !report.passed() {
        return Err(Error::NotACocycle(format!(
            "cochain fails {}",
            report.first_failure().unwrap_or("a cocycle condition")
        )));
    }
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());

    // Hat algebra table (skew storage over dimension n + w).
    let mut entries: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut val = linalg::vec_zero(f, n + w);
            for (k, s) in alg.bracket_basis(i, j).into_iter().enumerate() {
                val[k] = s;
            }
            for (a, s) in z.omega_basis(i, j).into_iter().enumerate() {
                val[n + a] = s;
            }
            if !linalg::vec_is_zero(&val) {
                entries.push((i, j, val));
            }
        }
        for b in 0..w {
            // [e_i, g_b] = ρ₂(e_i)(g_b).
            let mut val = linalg::vec_zero(f, n + w);
            for r in 0..w {
                val[n + r] = er.rho2()[i][(r, b)].clone();
            }
            if !linalg::vec_is_zero(&val) {
                entries.push((i, n + b, val));
            }
        }
    }
    let hat_alg = AlgebraData::skew(f, n + w, entries)?;

    let base_rho = et.rep().rho();
    let mut rho_hat = Vec::with_capacity(n + w);
    for i in 0..n {
        rho_hat.push(Matrix::from_fn(f, m + v, m + v, |r, c| {
            if r < m && c < m {
                base_rho[i][(r, c)].clone()
            } else if r >= m && c < m {
                z.nu[i][(r - m, c)].clone()
            } else if r >= m && c >= m {
                er.rho1()[i][(r - m, c - m)].clone()
            } else {
                f.zero()
            }
        }));
    }
    for a in 0..w {
        rho_hat.push(Matrix::from_fn(f, m + v, m + v, |r, c| {
            if r >= m && c < m {
                er.rho3()[c][(r - m, a)].neg()
            } else {
                f.zero()
            }
        }));
    }
    let hat_rep = Representation::new(hat_alg, m + v, rho_hat)?;

    let t = et.tensor();
    let t_hat = Matrix::from_fn(f, n + w, m + v, |r, c| {
        if r < n && c < m {
            t[(r, c)].clone()
        } else if r >= n && c < m {
            z.theta[(r - n, c)].clone()
        } else if r >= n && c >= m {
            er.t_prime()[(r - n, c - m)].clone()
        } else {
            f.zero()
        }
    });
    let hat = EmbeddingTensor::new(hat_rep, t_hat)?;

    let i0 = Matrix::from_fn(f, m + v, v, |r, c| {
        if r >= m && r - m == c { f.one() } else { f.zero() }
    });
    let i1 = Matrix::from_fn(f, n + w, w, |r, c| {
        if r >= n && r - n == c { f.one() } else { f.zero() }
    });
    let p0 = Matrix::from_fn(f, m, m + v, |r, c| if r == c { f.one() } else { f.zero() });
    let p1 = Matrix::from_fn(f, n, n + w, |r, c| if r == c { f.one() } else { f.zero() });
    Extension::new(hat, i0, i1, p0, p1)
}

/// Check that an extension document really is an abelian extension of
/// (et, er): exact in both rows, structure-preserving projections, and
/// kernel action matching the coefficient data.
pub fn validate_extension(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    ext: &Extension,
) -> Result<()> {
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let hat = &ext.hat;
    let hn = hat.algebra().dim();
    let hm = hat.rep().module_dim();

    if hat.algebra().field() != f {
        return Err(Error::FieldMismatch("extension over a different field".into()));
    }
    let fail = |msg: String| Err(Error::InvalidExtension(msg));
    if hn != n + w || hm != m + v {
        return fail(format!(
            "hat dimensions ({hn}, {hm}) do not match (n+w, m+v) = ({}, {})",
            n + w,
            m + v
        ));
    }
    if ext.i0.cols() != v || ext.i1.cols() != w || ext.p0.rows() != m || ext.p1.rows() != n {
        return fail("embedding/projection shapes do not match the coefficient data".into());
    }
    if ext.i0.rank() != v {
        return fail("i0 is not injective".into());
    }
    if ext.i1.rank() != w {
        return fail("i1 is not injective".into());
    }
    if ext.p0.rank() != m {
        return fail("p0 is not surjective".into());
    }
    if ext.p1.rank() != n {
        return fail("p1 is not surjective".into());
    }
    if !ext.p0.mul(&ext.i0)?.is_zero() {
        return fail("p0 ∘ i0 is not zero".into());
    }
    if !ext.p1.mul(&ext.i1)?.is_zero() {
        return fail("p1 ∘ i1 is not zero".into());
    }
    if ext.p1.mul(hat.tensor())? != et.tensor().mul(&ext.p0)? {
        return fail("p1 ∘ T̂ ≠ T ∘ p0".into());
    }
    let homo = hat.algebra().check_homomorphism(alg, &ext.p1)?;
    if !homo.passed() {
        return fail("p1 is not a bracket homomorphism".into());
    }
    // p0 intertwines the hat action with the base action.
    let hat_rho = hat.rep().rho();
    for a in 0..hn {
        let pa = ext.p1.col(a);
        let rho_pa = et.rep().rho_of(&pa)?;
        for b in 0..hm {
            let lhs = ext.p0.mul_vec(&hat_rho[a].col(b))?;
            let rhs = rho_pa.mul_vec(&ext.p0.col(b))?;
            if lhs != rhs {
                return fail(format!("p0 does not intertwine the actions at basis pair ({a}, {b})"));
            }
        }
    }
    // T̂ carries the embedded V into the embedded W through T′.
    if hat.tensor().mul(&ext.i0)? != ext.i1.mul(er.t_prime())? {
        return fail("T̂ ∘ i0 ≠ i1 ∘ T′".into());
    }
    // Bracket with the embedded kernel realizes ρ₂.
    for a in 0..hn {
        let pa = ext.p1.col(a);
        let rho2_pa = er.rho2_of(&pa)?;
        let ea = linalg::basis_vec(f, hn, a);
        for b in 0..w {
            let lhs = hat.algebra().bracket(&ea, &ext.i1.col(b))?;
            let rhs = ext.i1.mul_vec(&rho2_pa.col(b))?;
            if lhs != rhs {
                return fail(format!(
                    "bracket with the embedded kernel does not realize the W-action at ({a}, {b})"
                ));
            }
        }
    }
    // Hat action on the embedded V realizes ρ₁.
    for a in 0..hn {
        let pa = ext.p1.col(a);
        let rho1_pa = er.rho1_of(&pa)?;
        for b in 0..v {
            let lhs = hat_rho[a].mul_vec(&ext.i0.col(b))?;
            let rhs = ext.i0.mul_vec(&rho1_pa.col(b))?;
            if lhs != rhs {
                return fail(format!(
                    "hat action on the embedded V does not realize the V-action at ({a}, {b})"
                ));
            }
        }
    }
    // Action of the embedded W realizes −ρ₃.
    for a in 0..w {
        let wa = ext.i1.col(a);
        let rho_wa = hat.rep().rho_of(&wa)?;
        for b in 0..hm {
            let lhs = rho_wa.mul_vec(&linalg::basis_vec(f, hm, b))?;
            let rhs = ext.i0.mul_vec(&er.rho3_of(&ext.p0.col(b))?.col(a))?.iter().map(Scalar::neg).collect::<Vec<_>>();
            if lhs != rhs {
                return fail(format!(
                    "action of the embedded kernel does not realize the mixed map at ({a}, {b})"
                ));
            }
        }
    }
    Ok(())
}

fn solve_embedding(i: &Matrix, val: &[Scalar], what: &str) -> Result<Vec<Scalar>> {
    match i.solve(val)? {
        Some(c) => Ok(c),
        None => Err(Error::InternalInconsistency(format!(
            "{what} does not land in the embedded kernel"
        ))),
    }
}

/// Extract the two-cochain classified by an extension through a choice of
/// sections: θ(m) = T̂(σ₀ m) − σ₁(T m), ω(x, y) = [σ₁x, σ₁y]̂ − σ₁([x, y]),
/// ν(x, m) = ρ̂(σ₁x)(σ₀ m) − σ₀(ρ(x) m), each read back through the kernel
/// embeddings.
pub fn cocycle_from_splitting(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    ext: &Extension,
    s: &Splitting,
) -> Result<TwoCochain> {
    validate_extension(et, er, ext)?;
    let alg = et.algebra();
    let f = alg.field();
    let n = alg.dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let hat = &ext.hat;

    if s.sigma0.rows() != m + v || s.sigma0.cols() != m {
        return Err(Error::InvalidSplitting(format!(
            "sigma0 is {}x{}, expected {}x{m}",
            s.sigma0.rows(),
            s.sigma0.cols(),
            m + v
        )));
    }
    if s.sigma1.rows() != n + w || s.sigma1.cols() != n {
        return Err(Error::InvalidSplitting(format!(
            "sigma1 is {}x{}, expected {}x{n}",
            s.sigma1.rows(),
            s.sigma1.cols(),
            n + w
        )));
    }
    if s.sigma0.field() != f || s.sigma1.field() != f {
        return Err(Error::FieldMismatch("splitting field".into()));
    }
    if ext.p0.mul(&s.sigma0)? != Matrix::identity(f, m) {
        return Err(Error::InvalidSplitting("p0 ∘ sigma0 is not the identity".into()));
    }
    if ext.p1.mul(&s.sigma1)? != Matrix::identity(f, n) {
        return Err(Error::InvalidSplitting("p1 ∘ sigma1 is not the identity".into()));
    }

    let mut theta = Matrix::zero(f, w, m);
    for k in 0..m {
        let val = linalg::vec_sub(
            &hat.tensor().mul_vec(&s.sigma0.col(k))?,
            &s.sigma1.mul_vec(&et.tensor().col(k))?,
        );
        let c = solve_embedding(&ext.i1, &val, "tensor defect")?;
        for r in 0..w {
            theta[(r, k)] = c[r].clone();
        }
    }

    let mut omega = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            let val = linalg::vec_sub(
                &hat.algebra().bracket(&s.sigma1.col(i), &s.sigma1.col(j))?,
                &s.sigma1.mul_vec(&alg.bracket_basis(i, j))?,
            );
            omega.push(solve_embedding(&ext.i1, &val, "bracket defect")?);
        }
    }

    let base_rho = et.rep().rho();
    let mut nu = Vec::with_capacity(n);
    for i in 0..n {
        let hat_rho_i = hat.rep().rho_of(&s.sigma1.col(i))?;
        let mut mt = Matrix::zero(f, v, m);
        for k in 0..m {
            let val = linalg::vec_sub(
                &hat_rho_i.mul_vec(&s.sigma0.col(k))?,
                &s.sigma0.mul_vec(&base_rho[i].col(k))?,
            );
            let c = solve_embedding(&ext.i0, &val, "action defect")?;
            for r in 0..v {
                mt[(r, k)] = c[r].clone();
            }
        }
        nu.push(mt);
    }

    TwoCochain::new(f, n, m, v, w, theta, omega, nu)
}

/// Decide whether two cocycles are cohomologous; on success return a
/// one-cochain whose coboundary is their difference.
pub fn extensions_equivalent(
    et: &EmbeddingTensor,
    er: &EtRepresentation,
    z1: &TwoCochain,
    z2: &TwoCochain,
) -> Result<Option<OneCochain>> {
    for (label, z) in [("first", z1), ("second", z2)] {
        let report = is_cocycle(et, er, z)?;
        if !report.passed() {
            return Err(Error::NotACocycle(format!(
                "{label} cochain fails {}",
                report.first_failure().unwrap_or("a cocycle condition")
            )));
        }
    }
    let f = et.algebra().field();
    let n = et.algebra().dim();
    let m = et.rep().module_dim();
    let (v, w) = (er.dim_v(), er.dim_w());
    let dmat = coboundary_matrix(et, er, FormulaMode::Derived)?;
    let diff = z1.sub(z2)?;
    match dmat.solve(&diff.to_coords())? {
        Some(coords) => {
            let b = OneCochain::from_coords(f, n, m, v, w, &coords)?;
            let check = coboundary(et, er, &b)?;
            if check != diff {
                return Err(Error::InternalInconsistency(
                    "solved one-cochain does not reproduce the difference".into(),
                ));
            }
            Ok(Some(b))
        }
        None => Ok(None),
    }
}
