//! Finite-dimensional algebras given by structure constants, and the axiom
//! checkers for the bracket identities this crate cares about.
//!
//! Two storage flavors share one type. A *skew* table keeps constants only
//! for index pairs i < j (diagonal zero, the i > j half implied by
//! antisymmetry); a *full* table keeps every ordered pair and is used for
//! dialgebra-style products that are not antisymmetric. Constructors
//! canonicalize: reversed pairs fold into i < j with a sign flip, explicit
//! zero rows are dropped, duplicates are an error rather than being summed.
//!
//! The defining identity checked by [`AlgebraData::check_malcev`] is
//! quadratic in its first variable, so checking it on basis triples alone
//! is not sufficient. The checker also substitutes x = e_i + e_j for every
//! i < j; together these force both the "diagonal" and "cross" coefficient
//! blocks of the quadratic to vanish, which over a field of characteristic
//! ≠ 2 is equivalent to the identity holding for all x. In characteristic 2
//! that equivalence breaks down (and the classical correspondence with the
//! four-variable multilinear identity fails), so over 𝔽₂ the checker runs
//! the multilinear identity instead and says so in a report note.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{basis_vec, vec_add, vec_is_zero, vec_neg, vec_zero, Matrix};
use crate::report::{CheckBuilder, VerificationReport};
use crate::scalar::{Field, Scalar};

/// Structure constants of a finite-dimensional algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraData {
    field: Field,
    dim: usize,
    skew: bool,
    /// Nonzero bracket rows. Skew tables only ever hold keys with i < j.
    table: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl AlgebraData {
    /// Skew table from (i, j, coefficients) entries. Entries with i > j are
    /// folded to (j, i) with negated coefficients; a pair occurring twice
    /// after folding is rejected; diagonal entries must be zero rows.
    pub fn skew(
        field: Field,
        dim: usize,
        entries: Vec<(usize, usize, Vec<Scalar>)>,
    ) -> Result<AlgebraData> {
        let mut table = BTreeMap::new();
        for (i, j, coeffs) in entries {
            let row = Self::validate_row(field, dim, i, j, coeffs)?;
            if i == j {
                if !vec_is_zero(&row) {
                    return Err(Error::ParseError(format!(
                        "bracket entry ({i},{i}) must be zero in a skew table"
                    )));
                }
                continue;
            }
            let (key, row) = if i < j { ((i, j), row) } else { ((j, i), vec_neg(&row)) };
            if table.contains_key(&key) {
                return Err(Error::ParseError(format!(
                    "duplicate bracket entry for pair ({},{}) after folding",
                    key.0, key.1
                )));
            }
            if !vec_is_zero(&row) {
                table.insert(key, row);
            }
        }
        Ok(AlgebraData { field, dim, skew: true, table })
    }

    /// Full (not necessarily antisymmetric) table over ordered pairs.
    pub fn full(
        field: Field,
        dim: usize,
        entries: Vec<(usize, usize, Vec<Scalar>)>,
    ) -> Result<AlgebraData> {
        let mut table = BTreeMap::new();
        for (i, j, coeffs) in entries {
            let row = Self::validate_row(field, dim, i, j, coeffs)?;
            if table.contains_key(&(i, j)) {
                return Err(Error::ParseError(format!(
                    "duplicate bracket entry for pair ({i},{j})"
                )));
            }
            if !vec_is_zero(&row) {
                table.insert((i, j), row);
            }
        }
        Ok(AlgebraData { field, dim, skew: false, table })
    }

    fn validate_row(
        field: Field,
        dim: usize,
        i: usize,
        j: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Vec<Scalar>> {
        if i >= dim || j >= dim {
            return Err(Error::ShapeError(format!(
                "bracket entry ({i},{j}) out of range for dimension {dim}"
            )));
        }
        if coeffs.len() != dim {
            return Err(Error::ShapeError(format!(
                "bracket entry ({i},{j}) has {} coefficients, expected {dim}",
                coeffs.len()
            )));
        }
        for s in &coeffs {
            if s.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "bracket entry ({i},{j}) holds a {} scalar in a {field} algebra",
                    s.field()
                )));
            }
        }
        Ok(coeffs)
    }

    /// The zero bracket in the given dimension.
    pub fn abelian(field: Field, dim: usize) -> AlgebraData {
        AlgebraData { field, dim, skew: true, table: BTreeMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_skew(&self) -> bool {
        self.skew
    }

    /// Nonzero stored rows in canonical (sorted-key) order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<Scalar>)> {
        self.table.iter()
    }

    /// Dense bracket of two basis vectors, [e_i, e_j].
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        assert!(i < self.dim && j < self.dim, "basis index out of range");
        if self.skew {
            if i == j {
                return vec_zero(self.field, self.dim);
            }
            if i < j {
                self.table.get(&(i, j)).cloned().unwrap_or_else(|| vec_zero(self.field, self.dim))
            } else {
                self.table
                    .get(&(j, i))
                    .map(|r| vec_neg(r))
                    .unwrap_or_else(|| vec_zero(self.field, self.dim))
            }
        } else {
            self.table.get(&(i, j)).cloned().unwrap_or_else(|| vec_zero(self.field, self.dim))
        }
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::ShapeError(format!(
                "bracket of vectors of lengths {} and {} in dimension {}",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        for s in x.iter().chain(y.iter()) {
            if s.field() != self.field {
                return Err(Error::FieldMismatch("bracket operand scalar field differs".into()));
            }
        }
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec_zero(self.field, self.dim);
        for (&(i, j), row) in &self.table {
            let mut coef = x[i].mul(&y[j]);
            if self.skew {
                // Stored row covers both (i,j) and the negated (j,i).
                coef = coef.sub(&x[j].mul(&y[i]));
            }
            if coef.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(row) {
                *o = o.add(&c.mul(&coef));
            }
        }
        out
    }

    /// Jacobiator J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y].
    /// Only meaningful (and only allowed) for skew tables.
    pub fn jacobiator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
        self.require_skew("jacobiator")?;
        let xy = self.bracket(x, y)?;
        let yz = self.bracket(y, z)?;
        let zx = self.bracket(z, x)?;
        let t1 = self.bracket_unchecked(&xy, z);
        let t2 = self.bracket_unchecked(&yz, x);
        let t3 = self.bracket_unchecked(&zx, y);
        Ok(vec_add(&vec_add(&t1, &t2), &t3))
    }

    fn require_skew(&self, op: &str) -> Result<()> {
        if !self.skew {
            return Err(Error::NonSkewInput(format!("{op} requires a skew bracket table")));
        }
        Ok(())
    }

    fn subject(&self, what: &str) -> String {
        format!("{what} (dim {} over {})", self.dim, self.field)
    }

    /// Check the defining identity J(x,y,[x,z]) = [J(x,y,z),x] on all basis
    /// triples and, because the identity is quadratic in x, additionally
    /// with x = e_i + e_j for all i < j. Over 𝔽₂ the multilinear
    /// four-variable identity is checked instead (see module docs).
    pub fn check_malcev(&self) -> Result<VerificationReport> {
        self.require_skew("check_malcev")?;
        if self.field.is_char_two() {
            let mut rep = self.check_sagle()?;
            rep.subject = self.subject("malcev algebra candidate");
            rep.notes.push(
                "characteristic 2: the quadratic identity is not faithfully checkable on \
                 basis substitutions; the four-variable multilinear identity was used instead"
                    .into(),
            );
            return Ok(rep);
        }
        let mut rep = VerificationReport::new(self.subject("malcev algebra candidate"));
        let n = self.dim;
        let mut on_basis = CheckBuilder::new("malcev identity (basis x)");
        for xi in 0..n {
            let x = basis_vec(self.field, n, xi);
            for yi in 0..n {
                for zi in 0..n {
                    let (lhs, rhs) = self.malcev_sides(&x, yi, zi);
                    on_basis.record(&[xi, yi, zi], &lhs, &rhs);
                }
            }
        }
        rep.checks.push(on_basis.finish());
        let mut polarized = CheckBuilder::new("malcev identity (x = e_i + e_j)");
        for i in 0..n {
            for j in (i + 1)..n {
                let x = vec_add(&basis_vec(self.field, n, i), &basis_vec(self.field, n, j));
                for yi in 0..n {
                    for zi in 0..n {
                        let (lhs, rhs) = self.malcev_sides(&x, yi, zi);
                        polarized.record(&[i, j, yi, zi], &lhs, &rhs);
                    }
                }
            }
        }
        rep.checks.push(polarized.finish());
        Ok(rep)
    }

    fn malcev_sides(&self, x: &[Scalar], yi: usize, zi: usize) -> (Vec<Scalar>, Vec<Scalar>) {
        let y = basis_vec(self.field, self.dim, yi);
        let z = basis_vec(self.field, self.dim, zi);
        let xz = self.bracket_unchecked(x, &z);
        let lhs = self.jacobiator(x, &y, &xz).expect("shapes fixed");
        let jxyz = self.jacobiator(x, &y, &z).expect("shapes fixed");
        let rhs = self.bracket_unchecked(&jxyz, x);
        (lhs, rhs)
    }

    /// The multilinear four-variable identity equivalent to the quadratic
    /// one away from characteristic 2:
    /// [[x,z],[y,t]] = [[[x,y],z],t] + [[[y,z],t],x] + [[[z,t],x],y] + [[[t,x],y],z],
    /// checked on all basis quadruples.
    pub fn check_sagle(&self) -> Result<VerificationReport> {
        self.require_skew("check_sagle")?;
        let mut rep = VerificationReport::new(self.subject("malcev algebra candidate"));
        let n = self.dim;
        let mut check = CheckBuilder::new("four-variable multilinear identity");
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let xz = self.bracket_basis(x, z);
                        let yt = self.bracket_basis(y, t);
                        let lhs = self.bracket_unchecked(&xz, &yt);

                        let term = |a: usize, b: usize, c: usize, d: usize| {
                            let ab = self.bracket_basis(a, b);
                            let abc = self.bv(&ab, c);
                            self.bv(&abc, d)
                        };
                        let mut rhs = term(x, y, z, t);
                        rhs = vec_add(&rhs, &term(y, z, t, x));
                        rhs = vec_add(&rhs, &term(z, t, x, y));
                        rhs = vec_add(&rhs, &term(t, x, y, z));
                        check.record(&[x, y, z, t], &lhs, &rhs);
                    }
                }
            }
        }
        rep.checks.push(check.finish());
        Ok(rep)
    }

    /// [v, e_k] for a coordinate vector v.
    fn bv(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        self.bracket_unchecked(v, &basis_vec(self.field, self.dim, k))
    }

    /// Jacobi identity J(x,y,z) = 0 on basis triples (multilinear, so basis
    /// triples suffice over any field).
    pub fn check_jacobi(&self) -> Result<VerificationReport> {
        self.require_skew("check_jacobi")?;
        let mut rep = VerificationReport::new(self.subject("lie algebra candidate"));
        let n = self.dim;
        let zero = vec_zero(self.field, n);
        let mut check = CheckBuilder::new("jacobi identity");
        for x in 0..n {
            let xv = basis_vec(self.field, n, x);
            for y in 0..n {
                let yv = basis_vec(self.field, n, y);
                for z in 0..n {
                    let zv = basis_vec(self.field, n, z);
                    let j = self.jacobiator(&xv, &yv, &zv).expect("shapes fixed");
                    check.record(&[x, y, z], &j, &zero);
                }
            }
        }
        rep.checks.push(check.finish());
        Ok(rep)
    }

    /// Axioms of a left-sided dialgebra product (multilinear, basis tuples
    /// suffice): [[x,y]+[y,x], z] = 0 and the five-term identity
    /// [x,[y,[z,t]]] = [y,[z,[x,t]]] + [z,[[x,y],t]] + [[x,z],[y,t]] + [[x,[y,z]],t].
    /// Skew tables are accepted — a skew product is a special full table.
    pub fn check_left_dialgebra(&self) -> Result<VerificationReport> {
        let mut rep = VerificationReport::new(self.subject("left dialgebra candidate"));
        let n = self.dim;
        let zero = vec_zero(self.field, n);
        let mut anti = CheckBuilder::new("left anticommutativity");
        for x in 0..n {
            for y in 0..n {
                let sym = vec_add(&self.bracket_basis(x, y), &self.bracket_basis(y, x));
                for z in 0..n {
                    let lhs = self.bv(&sym, z);
                    anti.record(&[x, y, z], &lhs, &zero);
                }
            }
        }
        rep.checks.push(anti.finish());

        let mut five = CheckBuilder::new("left five-term identity");
        for x in 0..n {
            let xv = basis_vec(self.field, n, x);
            for y in 0..n {
                let yv = basis_vec(self.field, n, y);
                for z in 0..n {
                    let zv = basis_vec(self.field, n, z);
                    for t in 0..n {
                        let tv = basis_vec(self.field, n, t);
                        let zt = self.bracket_basis(z, t);
                        let lhs =
                            self.bracket_unchecked(&xv, &self.bracket_unchecked(&yv, &zt));

                        let xt = self.bracket_basis(x, t);
                        let r1 = self.bracket_unchecked(&yv, &self.bracket_unchecked(&zv, &xt));
                        let xy = self.bracket_basis(x, y);
                        let r2 = self
                            .bracket_unchecked(&zv, &self.bracket_unchecked(&xy, &tv));
                        let xz = self.bracket_basis(x, z);
                        let yt = self.bracket_basis(y, t);
                        let r3 = self.bracket_unchecked(&xz, &yt);
                        let yz = self.bracket_basis(y, z);
                        let r4 = self
                            .bracket_unchecked(&self.bracket_unchecked(&xv, &yz), &tv);
                        let rhs = vec_add(&vec_add(&r1, &r2), &vec_add(&r3, &r4));
                        five.record(&[x, y, z, t], &lhs, &rhs);
                    }
                }
            }
        }
        rep.checks.push(five.finish());
        Ok(rep)
    }

    /// Right-sided dialgebra axioms: the left axioms of the opposite product.
    pub fn check_right_dialgebra(&self) -> Result<VerificationReport> {
        let mut rep = self.opposite().check_left_dialgebra()?;
        rep.subject = self.subject("right dialgebra candidate");
        rep.notes.push("checked as the left axioms of the opposite product".into());
        Ok(rep)
    }

    /// The opposite algebra: [x,y]_op = [y,x], always stored as a full table.
    pub fn opposite(&self) -> AlgebraData {
        let mut table = BTreeMap::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.bracket_basis(j, i);
                if !vec_is_zero(&row) {
                    table.insert((i, j), row);
                }
            }
        }
        AlgebraData { field: self.field, dim: self.dim, skew: false, table }
    }

    /// Re-store a skew table as an explicit full table (used to feed skew
    /// products to the dialgebra checkers' full-table view in tests).
    pub fn to_full(&self) -> AlgebraData {
        let mut table = BTreeMap::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.bracket_basis(i, j);
                if !vec_is_zero(&row) {
                    table.insert((i, j), row);
                }
            }
        }
        AlgebraData { field: self.field, dim: self.dim, skew: false, table }
    }

    /// Does the linear map `phi` (dim(other) × dim(self)) carry this bracket
    /// to `other`'s: [φ(e_i), φ(e_j)]' = φ([e_i, e_j]) on all basis pairs?
    pub fn check_homomorphism(
        &self,
        other: &AlgebraData,
        phi: &Matrix,
    ) -> Result<VerificationReport> {
        if self.field != other.field || phi.field() != self.field {
            return Err(Error::FieldMismatch("homomorphism check across fields".into()));
        }
        if phi.rows() != other.dim || phi.cols() != self.dim {
            return Err(Error::ShapeError(format!(
                "phi is {}x{}, expected {}x{}",
                phi.rows(),
                phi.cols(),
                other.dim,
                self.dim
            )));
        }
        let mut rep = VerificationReport::new(format!(
            "bracket homomorphism (dim {} -> dim {} over {})",
            self.dim, other.dim, self.field
        ));
        let mut check = CheckBuilder::new("bracket homomorphism");
        for i in 0..self.dim {
            let pi = phi.col(i);
            for j in 0..self.dim {
                let pj = phi.col(j);
                let lhs = other.bracket(&pi, &pj)?;
                let rhs = phi.mul_vec(&self.bracket_basis(i, j))?;
                check.record(&[i, j], &lhs, &rhs);
            }
        }
        rep.checks.push(check.finish());
        Ok(rep)
    }

    /// Entrywise reduction of the table mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<AlgebraData> {
        let mut table = BTreeMap::new();
        for (&k, row) in &self.table {
            let mut new_row = Vec::with_capacity(row.len());
            for s in row {
                new_row.push(s.reduce_mod(p)?);
            }
            if !vec_is_zero(&new_row) {
                table.insert(k, new_row);
            }
        }
        Ok(AlgebraData { field: Field::Fp(p), dim: self.dim, skew: self.skew, table })
    }

    /// Dense structure-constant row [e_i, e_j] — public alias used by io.
    pub fn entry(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.bracket_basis(i, j)
    }

    /// Scale every structure constant (used to build perturbed variants in
    /// tests); keeps skewness.
    pub fn map_rows(&self, mut f: impl FnMut(&(usize, usize), &[Scalar]) -> Vec<Scalar>) -> AlgebraData {
        let mut table = BTreeMap::new();
        for (k, row) in &self.table {
            let new_row = f(k, row);
            assert_eq!(new_row.len(), self.dim);
            if !vec_is_zero(&new_row) {
                table.insert(*k, new_row);
            }
        }
        AlgebraData { field: self.field, dim: self.dim, skew: self.skew, table }
    }
}
