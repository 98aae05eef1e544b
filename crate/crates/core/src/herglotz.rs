//! Herglotz models on the free polydisk, the Cayley bridges between the
//! Pick, Herglotz and Schur classes, and the block-unitary reduction
//! `U = D − C(I + A)^{-1}B`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    block_diag, c64, cayley, identity, inverse_checked, isometry_defect, kron, spectral_norm, CMat, CVec,
    CayleyDirection, MatrixTuple, Sampler,
};
use crate::wire::{matrix_from_wire, matrix_to_wire, vector_from_wire, vector_to_wire, WireMatrix, WireVector};

const UNITARY_TOL: f64 = 1e-10;
const UNIT_TOL: f64 = 1e-12;
/// Points must satisfy `‖X_i‖ ≤ 1 − CONTRACTION_MARGIN`.
pub const CONTRACTION_MARGIN: f64 = 1e-6;

/// A unitary `U` on `⊕_{i=1}^d C^m`, a unit vector `v` in the same space and
/// a real shift `a`.
#[derive(Debug, Clone)]
pub struct HerglotzModel {
    d: usize,
    m: usize,
    u: CMat,
    v: CVec,
    a: f64,
}

/// Which of the two model formulas to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HerglotzForm {
    /// `(v*⊗I)(I + (U⊗I)δ(X))(I − (U⊗I)δ(X))^{-1}(v⊗I) − ia·I`.
    Cayley,
    /// `−ia·I + (v*⊗I)(L⊗I − δ(X))^{-1}(L⊗I + δ(X))(v⊗I)` with `L = U*`.
    Resolvent,
}

impl std::str::FromStr for HerglotzForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cayley" => Ok(HerglotzForm::Cayley),
            "resolvent" => Ok(HerglotzForm::Resolvent),
            other => Err(Error::schema("form", format!("unknown Herglotz form {other:?}"))),
        }
    }
}

impl HerglotzModel {
    pub fn new(d: usize, m: usize, u: CMat, v: CVec, a: f64) -> Result<Self> {
        let size = d * m;
        if d == 0 || m == 0 {
            return Err(Error::InvalidModel("d and m must be positive".into()));
        }
        if u.nrows() != size || u.ncols() != size {
            return Err(Error::InvalidModel(format!("U must be {size}x{size}")));
        }
        if v.len() != size {
            return Err(Error::InvalidModel(format!("v must have {size} entries")));
        }
        if !a.is_finite() {
            return Err(Error::InvalidModel("a must be finite".into()));
        }
        let defect = isometry_defect(&u);
        if !(defect <= UNITARY_TOL) {
            return Err(Error::InvalidModel(format!("U is not unitary (‖U*U − I‖ = {defect:e})")));
        }
        if !((v.norm() - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::InvalidModel(format!("v must be a unit vector (‖v‖ = {})", v.norm())));
        }
        Ok(HerglotzModel { d, m, u, v, a })
    }

    /// Haar unitary, uniformly random unit vector, `a = 0`.
    pub fn random(d: usize, m: usize, seed: u64) -> Self {
        let mut s = Sampler::new(seed);
        let u = s.haar_unitary(d * m);
        let v = s.unit_vector(d * m);
        HerglotzModel::new(d, m, u, v, 0.0).expect("sampled data is unitary and unit")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn u(&self) -> &CMat {
        &self.u
    }

    pub fn v(&self) -> &CVec {
        &self.v
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn to_wire(&self) -> ModelWire {
        ModelWire {
            d: self.d,
            m: self.m,
            u: matrix_to_wire(&self.u),
            v: vector_to_wire(&self.v),
            a: self.a,
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let wire: ModelWire = serde_json::from_str(s).map_err(|e| Error::schema("$", e.to_string()))?;
        wire.into_model()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelWire {
    pub d: usize,
    pub m: usize,
    #[serde(rename = "U")]
    pub u: WireMatrix,
    pub v: WireVector,
    #[serde(default)]
    pub a: f64,
}

impl ModelWire {
    pub fn into_model(self) -> Result<HerglotzModel> {
        let u = matrix_from_wire(&self.u, "$.U")?;
        let v = vector_from_wire(&self.v, "$.v")?;
        HerglotzModel::new(self.d, self.m, u, v, self.a)
    }
}

/// `δ(X) = ⊕_i I_m ⊗ X_i`, of size `dmn×dmn`.
pub fn delta(x: &MatrixTuple, m: usize) -> CMat {
    let id = identity(m);
    let blocks: Vec<CMat> = x.iter().map(|xi| kron(&id, xi)).collect();
    block_diag(&blocks.iter().collect::<Vec<_>>())
}

fn check_contraction(x: &MatrixTuple) -> Result<()> {
    for (i, xi) in x.iter().enumerate() {
        let norm = spectral_norm(xi);
        if !(norm <= 1.0 - CONTRACTION_MARGIN) {
            return Err(Error::OutsideDomain(format!(
                "coordinate {} has norm {norm}, need at most 1 − {CONTRACTION_MARGIN:e}",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn eval_herglotz(model: &HerglotzModel, x: &MatrixTuple, form: HerglotzForm) -> Result<CMat> {
    if x.d() != model.d {
        return Err(Error::AlphabetMismatch {
            expected: model.d,
            found: x.d(),
        });
    }
    check_contraction(x)?;
    let n = x.n();
    let id_n = identity(n);
    let size = model.d * model.m * n;
    let del = delta(x, model.m);
    let ui = kron(&model.u, &id_n);
    let vi = kron(&CMat::from_column_slice(model.d * model.m, 1, model.v.as_slice()), &id_n);
    let id = identity(size);
    let middle = match form {
        HerglotzForm::Cayley => {
            let ud = &ui * &del;
            (&id + &ud) * inverse_checked(&(&id - &ud), None)?
        }
        // L = U*: then L − δ = U*(I − Uδ), so both forms give the same function
        HerglotzForm::Resolvent => {
            let li = ui.adjoint();
            inverse_checked(&(&li - &del), None)? * (&li + &del)
        }
    };
    Ok(vi.adjoint() * middle * vi - id_n * c64(0.0, model.a))
}

/// Turns a Herglotz evaluator on `B^d` into a Pick evaluator on `Π^d`:
/// `f(Z) = i·h(X)` with `X_i = (Z_i − i)(Z_i + i)^{-1}`.
pub fn herglotz_to_pick<H>(h: H) -> impl Fn(&MatrixTuple) -> Result<CMat>
where
    H: Fn(&MatrixTuple) -> Result<CMat>,
{
    move |z: &MatrixTuple| {
        let x = cayley(z, CayleyDirection::HalfToDisk)?;
        Ok(h(&x)? * c64(0.0, 1.0))
    }
}

/// Turns a Pick evaluator on `Π^d` into a Herglotz evaluator on `B^d`:
/// `h(X) = −i·f(Z)` with `Z_i = i(I − X_i)^{-1}(I + X_i)`.
pub fn pick_to_herglotz<F>(f: F) -> impl Fn(&MatrixTuple) -> Result<CMat>
where
    F: Fn(&MatrixTuple) -> Result<CMat>,
{
    move |x: &MatrixTuple| {
        let z = cayley(x, CayleyDirection::DiskToHalf)?;
        Ok(f(&z)? * c64(0.0, -1.0))
    }
}

/// Schur-class evaluator `φ(X) = (h(X) − I)(h(X) + I)^{-1}`.
pub fn schur_cayley<H>(h: H) -> impl Fn(&MatrixTuple) -> Result<CMat>
where
    H: Fn(&MatrixTuple) -> Result<CMat>,
{
    move |x: &MatrixTuple| {
        let hx = h(x)?;
        let id = identity(hx.nrows());
        Ok((&hx - &id) * inverse_checked(&(&hx + &id), None)?)
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub u: CMat,
    /// `‖W*W − I‖` of the input.
    pub input_defect: f64,
    /// `‖U*U − I‖` of the output.
    pub isometry_defect: f64,
}

/// Splits `W = [[A, B], [C, D]]` with `A` of size `split×split` and returns
/// `U = D − C(I + A)^{-1}B`. `W` must be an isometry within `tol` and `I + A`
/// invertible.
pub fn lurking_unitary_reduce(w: &CMat, split: usize, tol: f64) -> Result<Reduction> {
    let (r, c) = w.shape();
    if split == 0 || split >= r.min(c) {
        return Err(Error::DimensionMismatch(format!("split {split} must lie strictly inside {r}x{c}")));
    }
    let input_defect = isometry_defect(w);
    if !(input_defect <= tol) {
        return Err(Error::InvalidModel(format!("W is not an isometry (‖W*W − I‖ = {input_defect:e})")));
    }
    let a = w.view((0, 0), (split, split)).into_owned();
    let b = w.view((0, split), (split, c - split)).into_owned();
    let cm = w.view((split, 0), (r - split, split)).into_owned();
    let d = w.view((split, split), (r - split, c - split)).into_owned();
    let inv = inverse_checked(&(identity(split) + a), None)?;
    let u = d - cm * inv * b;
    let isometry_defect = isometry_defect(&u);
    Ok(Reduction {
        u,
        input_defect,
        isometry_defect,
    })
}
