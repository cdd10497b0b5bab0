//! Linear Poisson structures and coisotropic pairs, classified by passing
//! to annihilators in the dual presymplectic space.
//!
//! The bivector is stored directly as the skew form `π` on the dual, and
//! the dual of `Q^n` is identified with `Q^n` through the standard dual
//! basis, so annihilators are kernels under the standard dot product.

use crate::classify::{multiplicities, normal_form, IsotropicPair, MultiplicityVector, NormalFormWitness};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::presymplectic::{LinearMap, PresymplecticSpace};

/// `Q^n` with a linear Poisson structure, given as the skew form `π` on the dual.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PoissonSpace {
    dual: PresymplecticSpace,
}

impl PoissonSpace {
    pub fn new(pi: Matrix) -> Result<Self> {
        Ok(PoissonSpace { dual: PresymplecticSpace::new(pi)? })
    }

    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    pub fn pi(&self) -> &Matrix {
        self.dual.omega()
    }

    /// The dual space with the presymplectic form `π`.
    pub fn dual(&self) -> &PresymplecticSpace {
        &self.dual
    }

    /// Whether the annihilator of `c` is isotropic for `π`.
    pub fn is_coisotropic(&self, c: &Subspace) -> Result<bool> {
        self.dual.is_isotropic(&annihilator(self.dim(), c)?)
    }
}

/// `{ξ : ξ(x) = 0 for all x in c}` in standard dual coordinates.
/// Inclusion-reversing and involutive.
pub fn annihilator(ambient_dim: usize, c: &Subspace) -> Result<Subspace> {
    check_dim(ambient_dim, c.ambient_dim())?;
    Ok(c.annihilator())
}

/// An ordered pair of coisotropic subspaces of a Poisson space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoisotropicPair {
    space: PoissonSpace,
    c1: Subspace,
    c2: Subspace,
}

impl CoisotropicPair {
    pub fn new(space: PoissonSpace, c1: Subspace, c2: Subspace) -> Result<Self> {
        check_dim(space.dim(), c1.ambient_dim())?;
        check_dim(space.dim(), c2.ambient_dim())?;
        if !space.is_coisotropic(&c1)? {
            return Err(Error::NotCoisotropic("C1".into()));
        }
        if !space.is_coisotropic(&c2)? {
            return Err(Error::NotCoisotropic("C2".into()));
        }
        Ok(CoisotropicPair { space, c1, c2 })
    }

    /// The coisotropic pair whose annihilators are `pair`: `π = ω`,
    /// `C1 = ann(A)`, `C2 = ann(B)`.
    pub fn from_isotropic_pair(pair: &IsotropicPair) -> CoisotropicPair {
        CoisotropicPair {
            space: PoissonSpace { dual: pair.space().clone() },
            c1: pair.a().annihilator(),
            c2: pair.b().annihilator(),
        }
    }

    pub fn space(&self) -> &PoissonSpace {
        &self.space
    }

    pub fn c1(&self) -> &Subspace {
        &self.c1
    }

    pub fn c2(&self) -> &Subspace {
        &self.c2
    }
}

/// `(ann C1, ann C2)` in the dual presymplectic space.
pub fn to_isotropic_pair(cp: &CoisotropicPair) -> Result<IsotropicPair> {
    let n = cp.space.dim();
    IsotropicPair::new(cp.space.dual.clone(), annihilator(n, &cp.c1)?, annihilator(n, &cp.c2)?)
}

pub fn coisotropic_multiplicities(cp: &CoisotropicPair) -> Result<MultiplicityVector> {
    multiplicities(&to_isotropic_pair(cp)?)
}

/// Normal form of the dual isotropic pair.
pub fn classify_coisotropic(cp: &CoisotropicPair) -> Result<NormalFormWitness> {
    normal_form(&to_isotropic_pair(cp)?)
}

/// The Poisson isomorphism `ψ = (φ⁻¹)ᵀ` whose dual is the witness map
/// inverse. It satisfies `ψ π ψᵀ = π_model` and sends `C1`, `C2` onto the
/// annihilators of the model's `A`, `B`.
pub fn poisson_isomorphism(witness: &NormalFormWitness) -> Result<LinearMap> {
    let inv = witness
        .phi
        .inverse()?
        .ok_or_else(|| Error::Inconsistent("witness map is not invertible".into()))?;
    Ok(LinearMap::from_matrix(inv.matrix().transpose()))
}
