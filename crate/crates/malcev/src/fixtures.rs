//! Shared example objects used by tests, shipped documents, and the
//! acceptance suite. Everything here is over ℚ; callers reduce mod p when
//! they need a finite-field variant.

use crate::algebra::AlgebraData;
use crate::cohomology::{self, OneCochain, TwoCochain};
use crate::deform::{FormalDeformation, NijenhuisPair};
use crate::et::{hemi_semidirect, EmbeddingTensor, Side};
use crate::etrep::EtRepresentation;
use crate::io::Document;
use crate::linalg::Matrix;
use crate::rep::Representation;
use crate::scalar::{Field, Scalar};

/// The 2-dimensional non-abelian Lie algebra: [e0, e1] = e1.
pub fn aff1() -> AlgebraData {
    let f = Field::Q;
    AlgebraData::skew(f, 2, vec![(0, 1, vec![f.zero(), f.one()])]).expect("valid table")
}

/// sl2 in the basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> AlgebraData {
    let f = Field::Q;
    AlgebraData::skew(
        f,
        3,
        vec![
            (0, 1, vec![f.int(0), f.int(2), f.int(0)]),
            (0, 2, vec![f.int(0), f.int(0), f.int(-2)]),
            (1, 2, vec![f.int(1), f.int(0), f.int(0)]),
        ],
    )
    .expect("valid table")
}

/// The 7-dimensional simple non-Lie Malcev algebra: commutators of the
/// imaginary octonions, [e_i, e_j] = 2 e_i e_j for i != j. The table below
/// follows the doubling construction on quaternion pairs with
/// (a,b)(c,d) = (ac − d̄b, da + bc̄); the unit-tests rebuild it from that
/// product and compare, so the constants cannot drift from their source.
pub fn m7() -> AlgebraData {
    let f = Field::Q;
    // Oriented triples (i, j, k) with e_i e_j = e_k, 1-based labels:
    // (1,2,3) (1,4,5) (2,4,6) (3,4,7) (2,5,7) (3,6,5) (1,7,6).
    let lines: [(usize, usize, usize); 7] =
        [(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (2, 5, 7), (3, 6, 5), (1, 7, 6)];
    let mut entries: Vec<(usize, usize, Vec<Scalar>)> = Vec::new();
    let mut push = |i: usize, j: usize, k: usize, sign: i64| {
        let mut row = vec![f.zero(); 7];
        row[k - 1] = f.int(2 * sign);
        entries.push((i - 1, j - 1, row));
    };
    for &(a, b, c) in &lines {
        // Each oriented line gives three products: ab = c, bc = a, ca = b;
        // store the i < j representative of each unordered pair.
        for &(i, j, k) in &[(a, b, c), (b, c, a), (c, a, b)] {
            if i < j {
                push(i, j, k, 1);
            } else {
                push(j, i, k, -1);
            }
        }
    }
    AlgebraData::skew(f, 7, entries).expect("valid table")
}

/// Abelian algebra of any dimension (zero bracket).
pub fn abelian(dim: usize) -> AlgebraData {
    AlgebraData::abelian(Field::Q, dim)
}

/// Every named base algebra. M₇ is the one non-Lie member.
pub fn algebras() -> Vec<(&'static str, AlgebraData)> {
    vec![
        ("abelian1", abelian(1)),
        ("abelian2", abelian(2)),
        ("abelian3", abelian(3)),
        ("abelian4", abelian(4)),
        ("aff1", aff1()),
        ("sl2", sl2()),
        ("m7", m7()),
    ]
}

// ---------------------------------------------------------------------
// Representations
// ---------------------------------------------------------------------

pub fn aff1_adjoint() -> Representation {
    Representation::adjoint(&aff1()).expect("skew base")
}

pub fn sl2_adjoint() -> Representation {
    Representation::adjoint(&sl2()).expect("skew base")
}

/// abelian(2) acting by zero on a 2-dimensional module.
pub fn abelian2_trivial() -> Representation {
    Representation::trivial(abelian(2), 2).expect("zero action")
}

/// abelian(1) acting on a line by the scalar 2 — the smallest fixture with
/// a nonzero action, used throughout the deformation examples.
pub fn scalar_rep() -> Representation {
    Representation::new(abelian(1), 1, vec![Matrix::from_ints(Field::Q, &[&[2]])])
        .expect("valid representation")
}

/// Every named representation; all of them pass check_representation.
pub fn representations() -> Vec<(&'static str, Representation)> {
    vec![
        ("aff1-adjoint", aff1_adjoint()),
        ("sl2-adjoint", sl2_adjoint()),
        ("abelian2-trivial", abelian2_trivial()),
        ("scalar", scalar_rep()),
    ]
}

// ---------------------------------------------------------------------
// Embedding tensors
// ---------------------------------------------------------------------

pub fn aff1_id_et() -> EmbeddingTensor {
    EmbeddingTensor::new(aff1_adjoint(), Matrix::identity(Field::Q, 2)).expect("valid tensor")
}

pub fn aff1_zero_et() -> EmbeddingTensor {
    EmbeddingTensor::new(aff1_adjoint(), Matrix::zero(Field::Q, 2, 2)).expect("valid tensor")
}

pub fn sl2_id_et() -> EmbeddingTensor {
    EmbeddingTensor::new(sl2_adjoint(), Matrix::identity(Field::Q, 3)).expect("valid tensor")
}

/// A rank-one tensor over the trivial representation (any map qualifies
/// there; this one is deliberately non-invertible and non-zero).
pub fn abelian2_et() -> EmbeddingTensor {
    EmbeddingTensor::new(abelian2_trivial(), Matrix::from_ints(Field::Q, &[&[1, 0], &[0, 0]]))
        .expect("valid tensor")
}

/// The zero tensor over the scalar representation (the only embedding
/// tensor that representation admits over ℚ).
pub fn scalar_et() -> EmbeddingTensor {
    EmbeddingTensor::new(scalar_rep(), Matrix::zero(Field::Q, 1, 1)).expect("valid tensor")
}

/// Everything zero: abelian(2), one-dimensional zero module, T = 0.
pub fn all_zero_et() -> EmbeddingTensor {
    let rep = Representation::trivial(abelian(2), 1).expect("zero action");
    EmbeddingTensor::new(rep, Matrix::zero(Field::Q, 2, 1)).expect("valid tensor")
}

/// Every named embedding tensor; all of them pass check_embedding_tensor.
pub fn embedding_tensors() -> Vec<(&'static str, EmbeddingTensor)> {
    vec![
        ("aff1-id", aff1_id_et()),
        ("aff1-zero", aff1_zero_et()),
        ("sl2-id", sl2_id_et()),
        ("abelian2", abelian2_et()),
        ("scalar", scalar_et()),
        ("all-zero", all_zero_et()),
    ]
}

// ---------------------------------------------------------------------
// ET-representations
// ---------------------------------------------------------------------

/// One-dimensional coefficients over the scalar tensor: ρ₁ = −2, ρ₂ = 2,
/// ρ₃ = 1, T′ = 0.
pub fn scalar_etrep() -> EtRepresentation {
    let f = Field::Q;
    EtRepresentation::new(
        scalar_et(),
        1,
        1,
        Matrix::zero(f, 1, 1),
        vec![Matrix::from_ints(f, &[&[-2]])],
        vec![Matrix::from_ints(f, &[&[2]])],
        vec![Matrix::from_ints(f, &[&[1]])],
    )
    .expect("valid coefficients")
}

pub fn aff1_id_adjoint_etrep() -> EtRepresentation {
    EtRepresentation::adjoint_shaped(&aff1_id_et())
}

pub fn scalar_adjoint_etrep() -> EtRepresentation {
    EtRepresentation::adjoint_shaped(&scalar_et())
}

pub fn sl2_id_adjoint_etrep() -> EtRepresentation {
    EtRepresentation::adjoint_shaped(&sl2_id_et())
}

pub fn abelian2_zero_etrep() -> EtRepresentation {
    EtRepresentation::zero(abelian2_et(), 1, 1).expect("zero coefficients")
}

pub fn all_zero_etrep() -> EtRepresentation {
    EtRepresentation::zero(all_zero_et(), 1, 1).expect("zero coefficients")
}

/// Every named ET-representation; all of them pass check_et_representation.
pub fn et_representations() -> Vec<(&'static str, EtRepresentation)> {
    vec![
        ("scalar", scalar_etrep()),
        ("scalar-adjoint", scalar_adjoint_etrep()),
        ("aff1-id-adjoint", aff1_id_adjoint_etrep()),
        ("sl2-id-adjoint", sl2_id_adjoint_etrep()),
        ("abelian2-zero", abelian2_zero_etrep()),
        ("all-zero", all_zero_etrep()),
    ]
}

/// The (embedding tensor, coefficient) pairs the cohomology suites sweep.
pub fn cohomology_pairs() -> Vec<(&'static str, EmbeddingTensor, EtRepresentation)> {
    vec![
        ("scalar", scalar_et(), scalar_etrep()),
        ("scalar-adjoint", scalar_et(), scalar_adjoint_etrep()),
        ("all-zero", all_zero_et(), all_zero_etrep()),
        ("abelian2-zero", abelian2_et(), abelian2_zero_etrep()),
        ("aff1-id-adjoint", aff1_id_et(), aff1_id_adjoint_etrep()),
        ("sl2-id-adjoint", sl2_id_et(), sl2_id_adjoint_etrep()),
    ]
}

// ---------------------------------------------------------------------
// Deformation objects (all tied to the scalar or aff1-id tensors)
// ---------------------------------------------------------------------

/// θ = 1, ω = 0, ν = 0 on the scalar tensor: a first-order direction that
/// satisfies the linear (λ¹) conditions but fails at λ².
pub fn scalar_theta_cochain() -> TwoCochain {
    let f = Field::Q;
    TwoCochain::new(
        f,
        1,
        1,
        1,
        1,
        Matrix::from_ints(f, &[&[1]]),
        vec![],
        vec![Matrix::zero(f, 1, 1)],
    )
    .expect("valid cochain")
}

/// θ = 0, ω = 0, ν = 1 on the scalar tensor: a genuine first-order
/// deformation, and a trivial one (see `scalar_witness_cochain`).
pub fn scalar_nu_cochain() -> TwoCochain {
    let f = Field::Q;
    TwoCochain::new(
        f,
        1,
        1,
        1,
        1,
        Matrix::zero(f, 1, 1),
        vec![],
        vec![Matrix::from_ints(f, &[&[1]])],
    )
    .expect("valid cochain")
}

/// The zero two-cochain in the scalar tensor's deformation shape.
pub fn scalar_zero_cochain() -> TwoCochain {
    TwoCochain::zero(Field::Q, 1, 1, 1, 1)
}

/// The one-cochain (b₀, b₁) = (0, 1/2) whose coboundary is the ν-direction
/// above, exhibiting it as a trivial deformation.
pub fn scalar_witness_cochain() -> OneCochain {
    let f = Field::Q;
    let half = Scalar::parse_in(f, "1/2").expect("valid scalar");
    OneCochain::new(f, 1, 1, 1, 1, Matrix::zero(f, 1, 1), Matrix::from_fn(f, 1, 1, |_, _| half.clone()))
        .expect("valid cochain")
}

/// Order-one formal deformation of the scalar tensor in the ν-direction;
/// passes the full check at every λ-degree.
pub fn scalar_formal() -> FormalDeformation {
    FormalDeformation::new(&scalar_et(), vec![scalar_nu_cochain()]).expect("valid shape")
}

/// (N₀, N₁) = (1/2, 1) on the scalar tensor.
pub fn scalar_nijenhuis_pair() -> NijenhuisPair {
    let f = Field::Q;
    let half = Scalar::parse_in(f, "1/2").expect("valid scalar");
    NijenhuisPair::new(Matrix::from_fn(f, 1, 1, |_, _| half.clone()), Matrix::identity(f, 1))
        .expect("square operators")
}

/// N₀ = N₁ = projection onto e₀, a non-invertible pair that satisfies all
/// three compatibility conditions on the aff1 identity tensor.
pub fn aff1_projection_pair() -> NijenhuisPair {
    let p = Matrix::from_ints(Field::Q, &[&[1, 0], &[0, 0]]);
    NijenhuisPair::new(p.clone(), p).expect("square operators")
}

// ---------------------------------------------------------------------
// Shipped documents
// ---------------------------------------------------------------------

/// Every JSON document shipped in the repository's fixtures/ directory,
/// keyed by file name. A unit test pins the files to byte-equality with
/// this list (regenerate with MALCEV_REGEN_FIXTURES=1).
pub fn shipped_documents() -> Vec<(&'static str, Document)> {
    let scalar_extension = {
        let (et, er) = (scalar_et(), scalar_etrep());
        let basis = cohomology::cocycle_space(&et, &er, cohomology::FormulaMode::Derived)
            .expect("cocycle space");
        cohomology::extension_from_cocycle(&et, &er, &basis[0]).expect("valid cocycle")
    };
    let aff1_hemi =
        hemi_semidirect(&aff1_adjoint()).expect("verified representation");
    vec![
        ("algebra_abelian2.json", Document::MalcevAlgebra(abelian(2))),
        ("algebra_aff1.json", Document::MalcevAlgebra(aff1())),
        ("algebra_sl2.json", Document::MalcevAlgebra(sl2())),
        ("algebra_m7.json", Document::MalcevAlgebra(m7())),
        ("dialgebra_aff1_hemi.json", Document::Dialgebra { table: aff1_hemi, side: Side::Left }),
        ("rep_aff1_adjoint.json", Document::Representation(aff1_adjoint())),
        ("rep_sl2_adjoint.json", Document::Representation(sl2_adjoint())),
        ("rep_abelian2_trivial.json", Document::Representation(abelian2_trivial())),
        ("rep_scalar.json", Document::Representation(scalar_rep())),
        ("et_aff1_id.json", Document::EmbeddingTensor(aff1_id_et())),
        ("et_aff1_zero.json", Document::EmbeddingTensor(aff1_zero_et())),
        ("et_sl2_id.json", Document::EmbeddingTensor(sl2_id_et())),
        ("et_abelian2.json", Document::EmbeddingTensor(abelian2_et())),
        ("et_scalar.json", Document::EmbeddingTensor(scalar_et())),
        ("et_all_zero.json", Document::EmbeddingTensor(all_zero_et())),
        ("etrep_scalar.json", Document::EtRepresentation(scalar_etrep())),
        ("etrep_scalar_adjoint.json", Document::EtRepresentation(scalar_adjoint_etrep())),
        ("etrep_aff1_id_adjoint.json", Document::EtRepresentation(aff1_id_adjoint_etrep())),
        ("etrep_sl2_id_adjoint.json", Document::EtRepresentation(sl2_id_adjoint_etrep())),
        ("etrep_abelian2_zero.json", Document::EtRepresentation(abelian2_zero_etrep())),
        ("etrep_all_zero.json", Document::EtRepresentation(all_zero_etrep())),
        ("cochain_scalar_theta.json", Document::TwoCochain(scalar_theta_cochain())),
        ("cochain_scalar_nu.json", Document::TwoCochain(scalar_nu_cochain())),
        ("cochain_scalar_zero.json", Document::TwoCochain(scalar_zero_cochain())),
        ("one_cochain_scalar_witness.json", Document::OneCochain(scalar_witness_cochain())),
        ("nijenhuis_scalar.json", Document::NijenhuisPair(scalar_nijenhuis_pair())),
        ("nijenhuis_aff1_projection.json", Document::NijenhuisPair(aff1_projection_pair())),
        (
            "formal_scalar_nu.json",
            Document::FormalDeformation {
                field: Field::Q,
                n: 1,
                m: 1,
                terms: scalar_formal().terms().to_vec(),
            },
        ),
        ("extension_scalar.json", Document::Extension(scalar_extension)),
    ]
}
