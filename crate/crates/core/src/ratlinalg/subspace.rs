use num_traits::{One, Zero};

use super::{MatQ, Rational};
use crate::error::{Error, Result};

/// A rational subspace of `ℚ^n`, stored by its canonical RREF basis.
///
/// Two subspaces compare equal exactly when they are the same subspace: the
/// basis is re-canonicalized on every construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceQ {
    ambient: usize,
    basis: MatQ,
    pivots: Vec<usize>,
}

impl SubspaceQ {
    /// The span of the given rows (any spanning set, possibly dependent).
    pub fn from_spanning_rows(ambient: usize, rows: &MatQ) -> Result<Self> {
        if rows.cols() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "spanning vectors have length {}, ambient dimension is {ambient}",
                rows.cols()
            )));
        }
        let (red, pivots) = rows.rref();
        let data = (0..pivots.len())
            .flat_map(|i| red.row(i).to_vec())
            .collect();
        let basis = MatQ::new(pivots.len(), ambient, data)?;
        Ok(SubspaceQ {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        Self::from_spanning_rows(ambient, &MatQ::from_rows(vectors)?)
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceQ {
            ambient,
            basis: MatQ::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceQ {
            ambient,
            basis: MatQ::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical RREF basis, one row per dimension.
    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. With an RREF basis the candidate coordinates are simply
    /// the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.combine(&coords);
        (recon.as_slice() == v).then_some(coords)
    }

    /// `Σ coords[i] · basis[i]`.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &SubspaceQ) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Orthogonal complement under the standard pairing: `{w : ⟨b, w⟩ = 0 ∀ b}`.
    pub fn annihilator(&self) -> SubspaceQ {
        kernel_space(&self.basis)
    }

    /// `M(U)` for a square `M` acting on column vectors.
    pub fn image_under(&self, m: &MatQ) -> Result<SubspaceQ> {
        self.check_operator(m)?;
        let rows = (0..self.dim())
            .map(|i| m.mul_vec(self.basis.row(i)))
            .collect();
        SubspaceQ::from_vectors(self.ambient, rows)
    }

    pub fn is_stable_under(&self, m: &MatQ) -> Result<bool> {
        Ok(self.image_under(m)?.is_subspace_of(self))
    }

    /// Matrix of `M|U` in the canonical basis coordinates. Column `i` holds the
    /// coordinates of `M·b_i`. Fails if `U` is not `M`-stable.
    pub fn restrict(&self, m: &MatQ) -> Result<MatQ> {
        self.check_operator(m)?;
        let d = self.dim();
        let mut out = MatQ::zeros(d, d);
        for i in 0..d {
            let image = m.mul_vec(self.basis.row(i));
            let coords = self.coordinates(&image).ok_or_else(|| {
                Error::NotContained("operator image".into(), "the subspace".into())
            })?;
            for (j, c) in coords.into_iter().enumerate() {
                out.set(j, i, c);
            }
        }
        Ok(out)
    }

    /// Lifts a subspace given in basis coordinates back to the ambient space.
    pub fn lift(&self, coords: &SubspaceQ) -> Result<SubspaceQ> {
        if coords.ambient != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "coordinate subspace lives in dimension {}, basis has {} vectors",
                coords.ambient,
                self.dim()
            )));
        }
        let rows = (0..coords.dim())
            .map(|i| self.combine(coords.basis.row(i)))
            .collect();
        SubspaceQ::from_vectors(self.ambient, rows)
    }

    fn check_operator(&self, m: &MatQ) -> Result<()> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on ambient dimension {}",
                m.rows(),
                m.cols(),
                self.ambient
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ambient_dim": self.ambient,
            "dim": self.dim(),
            "basis": self.basis.to_json(),
        })
    }
}

/// `{v : M·v = 0}` inside `ℚ^{cols(M)}`.
pub fn kernel_space(m: &MatQ) -> SubspaceQ {
    let n = m.cols();
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() == n {
        return SubspaceQ::full(n);
    }
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red.get(i, f).clone();
            }
            v
        })
        .collect();
    SubspaceQ::from_vectors(n, vectors).expect("kernel vectors have ambient length")
}

/// Column space of `M` inside `ℚ^{rows(M)}`.
pub fn image_space(m: &MatQ) -> SubspaceQ {
    SubspaceQ::from_spanning_rows(m.rows(), &m.transpose()).expect("transpose has matching width")
}

fn check_same_ambient(u: &SubspaceQ, v: &SubspaceQ) -> Result<()> {
    if u.ambient != v.ambient {
        return Err(Error::DimensionMismatch(format!(
            "subspaces of ℚ^{} and ℚ^{}",
            u.ambient, v.ambient
        )));
    }
    Ok(())
}

pub fn sum_spaces(u: &SubspaceQ, v: &SubspaceQ) -> Result<SubspaceQ> {
    check_same_ambient(u, v)?;
    let mut rows = u.basis.row_vecs();
    rows.extend(v.basis.row_vecs());
    SubspaceQ::from_vectors(u.ambient, rows)
}

/// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
pub fn intersect_spaces(u: &SubspaceQ, v: &SubspaceQ) -> Result<SubspaceQ> {
    check_same_ambient(u, v)?;
    if u.is_subspace_of(v) {
        return Ok(u.clone());
    }
    if v.is_subspace_of(u) {
        return Ok(v.clone());
    }
    Ok(sum_spaces(&u.annihilator(), &v.annihilator())?.annihilator())
}
