use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{
    c64, frobenius_norm, hermitian_eigen, identity, max_asymmetry, spectral_norm, CMat, CVec, Sampler,
};
use crate::wire::{matrix_from_wire, matrix_to_wire, vector_from_wire, vector_to_wire, WireMatrix, WireVector};

/// Invariant tolerance for decompositions and Hermitian data.
const SPEC_TOL: f64 = 1e-10;

/// How the representation space is split across coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    /// PSD `Y_i` summing to the identity (kinds 1–3).
    Positive(Vec<CMat>),
    /// Pairwise orthogonal projections summing to the identity (kind 4).
    Orthogonal(Vec<CMat>),
}

impl Decomposition {
    pub fn parts(&self) -> &[CMat] {
        match self {
            Decomposition::Positive(y) | Decomposition::Orthogonal(y) => y,
        }
    }
}

/// Validated data for one of the four structured-resolvent representations.
#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    kind: u8,
    a: f64,
    m: usize,
    a_op: CMat,
    decomposition: Decomposition,
    dim_n: usize,
    v: CVec,
}

impl RepresentationSpec {
    /// Kinds 1–3 take a positive decomposition `y`; `a_op` is `m×m`.
    pub fn new(kind: u8, a: f64, a_op: CMat, y: Vec<CMat>, v: CVec) -> Result<Self> {
        if !(1..=3).contains(&kind) {
            return Err(Error::InvalidSpec(format!("kind {kind} needs a positive decomposition; use kind 1, 2 or 3")));
        }
        let m = v.len();
        let spec = RepresentationSpec {
            kind,
            a,
            m,
            a_op,
            decomposition: Decomposition::Positive(y),
            dim_n: 0,
            v,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Kind 4 on `H = N ⊕ K`, `N` first with `dim_n` rows; `a_op` acts on `K`.
    pub fn type4(a: f64, dim_n: usize, a_op: CMat, p: Vec<CMat>, v: CVec) -> Result<Self> {
        let m = v.len();
        let spec = RepresentationSpec {
            kind: 4,
            a,
            m,
            a_op,
            decomposition: Decomposition::Orthogonal(p),
            dim_n,
            v,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> u8 {
        self.kind
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.decomposition.parts().len()
    }

    pub fn a_op(&self) -> &CMat {
        &self.a_op
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn dim_n(&self) -> usize {
        self.dim_n
    }

    pub fn v(&self) -> &CVec {
        &self.v
    }

    /// Same data with a different constant term.
    pub fn with_a(&self, a: f64) -> Result<Self> {
        let mut out = self.clone();
        out.a = a;
        out.validate()?;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        if m == 0 {
            return Err(Error::InvalidSpec("v must be nonempty".into()));
        }
        if !self.a.is_finite() {
            return Err(Error::InvalidSpec("a must be finite".into()));
        }
        if self.kind == 1 && self.a != 0.0 {
            return Err(Error::InvalidSpec("kind 1 has no constant term; a must be 0".into()));
        }
        let k_dim = if self.kind == 4 {
            if self.dim_n > m {
                return Err(Error::InvalidSpec(format!("dimN = {} exceeds m = {m}", self.dim_n)));
            }
            m - self.dim_n
        } else {
            m
        };
        if self.a_op.nrows() != k_dim || self.a_op.ncols() != k_dim {
            return Err(Error::InvalidSpec(format!(
                "A must be {k_dim}x{k_dim}, got {}x{}",
                self.a_op.nrows(),
                self.a_op.ncols()
            )));
        }
        if self.a_op.iter().chain(self.v.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidSpec("A and v must be finite".into()));
        }
        if max_asymmetry(&self.a_op) > SPEC_TOL * (1.0 + frobenius_norm(&self.a_op)) {
            return Err(Error::InvalidSpec("A must be Hermitian (A = A*)".into()));
        }
        let parts = self.decomposition.parts();
        if parts.is_empty() {
            return Err(Error::InvalidSpec("decomposition must have at least one part".into()));
        }
        let mut sum = CMat::zeros(m, m);
        for (i, p) in parts.iter().enumerate() {
            if p.nrows() != m || p.ncols() != m {
                return Err(Error::InvalidSpec(format!("part {} must be {m}x{m}", i + 1)));
            }
            if max_asymmetry(p) > SPEC_TOL {
                return Err(Error::InvalidSpec(format!("part {} must be Hermitian", i + 1)));
            }
            let min = hermitian_eigen(p)?.min();
            if min < -SPEC_TOL {
                return Err(Error::InvalidSpec(format!("part {} is not PSD (min eigenvalue {min:e})", i + 1)));
            }
            sum += p;
        }
        if spectral_norm(&(sum - identity(m))) > SPEC_TOL {
            return Err(Error::InvalidSpec("decomposition must sum to the identity (ΣY = I)".into()));
        }
        if let Decomposition::Orthogonal(p) = &self.decomposition {
            for (i, pi) in p.iter().enumerate() {
                if spectral_norm(&(pi * pi - pi)) > SPEC_TOL {
                    return Err(Error::InvalidSpec(format!("P{} is not idempotent", i + 1)));
                }
                for (j, pj) in p.iter().enumerate().skip(i + 1) {
                    if spectral_norm(&(pi * pj)) > SPEC_TOL {
                        return Err(Error::InvalidSpec(format!("P{} P{} ≠ 0", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_wire(&self) -> SpecWire {
        let mats = |v: &[CMat]| Some(v.iter().map(matrix_to_wire).collect());
        let (y, p) = match &self.decomposition {
            Decomposition::Positive(y) => (mats(y), None),
            Decomposition::Orthogonal(p) => (None, mats(p)),
        };
        SpecWire {
            kind: self.kind,
            a: self.a,
            m: self.m,
            a_op: matrix_to_wire(&self.a_op),
            y,
            p,
            dim_n: (self.kind == 4).then_some(self.dim_n),
            v: vector_to_wire(&self.v),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let wire: SpecWire = serde_json::from_str(s).map_err(|e| Error::schema("$", e.to_string()))?;
        wire.into_spec()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecWire {
    pub kind: u8,
    #[serde(default)]
    pub a: f64,
    pub m: usize,
    #[serde(rename = "A")]
    pub a_op: WireMatrix,
    #[serde(rename = "Y", default)]
    pub y: Option<Vec<WireMatrix>>,
    #[serde(rename = "P", default)]
    pub p: Option<Vec<WireMatrix>>,
    #[serde(rename = "dimN", default)]
    pub dim_n: Option<usize>,
    pub v: WireVector,
}

impl SpecWire {
    pub fn into_spec(self) -> Result<RepresentationSpec> {
        let a_op = matrix_from_wire(&self.a_op, "$.A")?;
        let v = vector_from_wire(&self.v, "$.v")?;
        if v.len() != self.m {
            return Err(Error::schema("$.v", format!("expected {} entries, found {}", self.m, v.len())));
        }
        let parts = |field: &str, list: &Option<Vec<WireMatrix>>| -> Result<Vec<CMat>> {
            match list {
                None => Err(Error::schema(format!("$.{field}"), format!("kind {} requires {field}", self.kind))),
                Some(ms) => ms
                    .iter()
                    .enumerate()
                    .map(|(i, w)| matrix_from_wire(w, &format!("$.{field}[{i}]")))
                    .collect(),
            }
        };
        match self.kind {
            1..=3 => RepresentationSpec::new(self.kind, self.a, a_op, parts("Y", &self.y)?, v),
            4 => {
                let dim_n = self.dim_n.ok_or_else(|| Error::schema("$.dimN", "kind 4 requires dimN"))?;
                RepresentationSpec::type4(self.a, dim_n, a_op, parts("P", &self.p)?, v)
            }
            k => Err(Error::schema("$.kind", format!("kind must be 1, 2, 3 or 4, found {k}"))),
        }
    }
}

/// A random valid representation for fuzzing: Hermitian `A`, a normalized
/// positive decomposition (or Haar-rotated coordinate projections for kind 4)
/// and a Gaussian `v`.
pub fn random_spec(kind: u8, m: usize, d: usize, seed: u64) -> Result<RepresentationSpec> {
    let mut s = Sampler::new(seed);
    let a = if kind == 1 { 0.0 } else { s.uniform(-1.0, 1.0) };
    let v = s.gaussian_vector(m);
    if kind == 4 {
        let dim_n = s.index(m + 1);
        let a_op = s.hermitian(m - dim_n).scale(2.0);
        let u = s.haar_unitary(m);
        // Assign each basis column to a coordinate, every coordinate at least
        // once when m ≥ d.
        let mut p = vec![CMat::zeros(m, m); d];
        for col in 0..m {
            let i = if col < d { col } else { s.index(d) };
            let c = u.column(col).into_owned();
            p[i] += &c * c.adjoint();
        }
        return RepresentationSpec::type4(a, dim_n, a_op, p, v);
    }
    let a_op = s.hermitian(m).scale(2.0);
    let raw: Vec<CMat> = (0..d).map(|_| s.psd(m) + identity(m).scale(0.05)).collect();
    let total = raw.iter().fold(CMat::zeros(m, m), |acc, b| acc + b);
    let eig = hermitian_eigen(&total)?;
    let mut inv_sqrt = CMat::zeros(m, m);
    for (i, &lam) in eig.values.iter().enumerate() {
        let e = eig.vector(i);
        inv_sqrt += (&e * e.adjoint()) * c64(lam.powf(-0.5), 0.0);
    }
    let y = raw
        .iter()
        .map(|b| {
            let yi = &inv_sqrt * b * &inv_sqrt;
            (&yi + yi.adjoint()) * c64(0.5, 0.0)
        })
        .collect();
    RepresentationSpec::new(kind, a, a_op, y, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::real_diag;

    fn cv(xs: &[f64]) -> CVec {
        CVec::from_iterator(xs.len(), xs.iter().map(|&x| c64(x, 0.0)))
    }

    #[test]
    fn decompositions_gate() {
        let ok = RepresentationSpec::new(2, 0.0, identity(2), vec![identity(2).scale(0.6), identity(2).scale(0.4)], cv(&[1.0, 0.0]));
        assert!(ok.is_ok());
        let bad = RepresentationSpec::new(2, 0.0, identity(2), vec![identity(2).scale(0.6), identity(2).scale(0.5)], cv(&[1.0, 0.0]));
        match bad {
            Err(Error::InvalidSpec(msg)) => assert!(msg.contains("sum to the identity"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let neg = RepresentationSpec::new(2, 0.0, identity(1), vec![real_diag(&[1.5]), real_diag(&[-0.5])], cv(&[1.0]));
        assert!(matches!(neg, Err(Error::InvalidSpec(msg)) if msg.contains("not PSD")));
    }

    #[test]
    fn kind1_requires_zero_shift() {
        let r = RepresentationSpec::new(1, 1.0, identity(1), vec![identity(1)], cv(&[1.0]));
        assert!(r.is_err());
    }

    #[test]
    fn projections_gate() {
        let p1 = real_diag(&[1.0, 0.0]);
        let p2 = real_diag(&[0.0, 1.0]);
        assert!(RepresentationSpec::type4(0.0, 1, identity(1), vec![p1.clone(), p2], cv(&[1.0, 1.0])).is_ok());
        let half = real_diag(&[0.5, 0.5]);
        let r = RepresentationSpec::type4(0.0, 1, identity(1), vec![half.clone(), half], cv(&[1.0, 1.0]));
        assert!(matches!(r, Err(Error::InvalidSpec(msg)) if msg.contains("idempotent")));
        let r = RepresentationSpec::type4(0.0, 1, identity(2), vec![p1, real_diag(&[0.0, 1.0])], cv(&[1.0, 1.0]));
        assert!(r.is_err(), "A must live on K");
    }

    #[test]
    fn non_hermitian_a_rejected() {
        let mut a = identity(2);
        a[(0, 1)] = c64(1.0, 0.0);
        assert!(RepresentationSpec::new(2, 0.0, a, vec![identity(2)], cv(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn json_round_trip() {
        for kind in 1..=4u8 {
            let spec = random_spec(kind, 4, 2, kind as u64).unwrap();
            let text = serde_json::to_string(&spec.to_wire()).unwrap();
            let back = RepresentationSpec::from_json_str(&text).unwrap();
            assert_eq!(back.kind(), kind);
            assert_eq!(back.a_op(), spec.a_op());
            assert_eq!(back.v(), spec.v());
            assert_eq!(back.decomposition(), spec.decomposition());
        }
    }

    #[test]
    fn json_errors_name_fields() {
        let text = r#"{"kind":4,"a":0,"m":1,"A":[],"P":[[[[1,0]]]],"v":[[1,0]]}"#;
        match RepresentationSpec::from_json_str(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.dimN"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"kind":2,"a":0,"m":1,"A":[[[1,0]]],"v":[[1,0]]}"#;
        assert!(matches!(RepresentationSpec::from_json_str(text), Err(Error::Schema { path, .. }) if path == "$.Y"));
    }
}
