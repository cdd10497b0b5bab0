use std::fmt;

use crate::classify::{IsotropicPair, MultiplicityVector, NUM_TYPES};
use crate::error::Result;
use crate::linalg::Subspace;
use crate::presymplectic::{reduction_split_with, PresymplecticSpace};

/// One elementary summand: the subspace `V_i` and `A ∩ V_i`, `B ∩ V_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub type_index: usize,
    pub space: Subspace,
    pub a: Subspace,
    pub b: Subspace,
}

impl Summand {
    /// Number of indecomposable blocks this summand splits into.
    pub fn multiplicity(&self) -> usize {
        self.space.dim() / super::BLOCK_DIMS[self.type_index - 1]
    }
}

/// Every intermediate subspace chosen by the construction, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    entries: Vec<(&'static str, Subspace)>,
}

impl Trace {
    fn push(&mut self, label: &'static str, s: &Subspace) {
        self.entries.push((label, s.clone()));
    }

    pub fn entries(&self) -> &[(&'static str, Subspace)] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&Subspace> {
        self.entries.iter().find(|(l, _)| *l == label).map(|(_, s)| s)
    }

    pub fn labels(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|(l, _)| *l)
    }
}

/// Orthogonal direct-sum decomposition of `V` into ten elementary summands,
/// distributive with respect to `A`, `B` and the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDecomposition {
    pub space: PresymplecticSpace,
    pub summands: Vec<Summand>,
    pub trace: Trace,
}

impl ElementaryDecomposition {
    pub fn summand(&self, type_index: usize) -> &Summand {
        &self.summands[type_index - 1]
    }

    pub fn summand_dims(&self) -> [usize; NUM_TYPES] {
        std::array::from_fn(|i| self.summands[i].space.dim())
    }

    /// Multiplicities read off the summand dimensions.
    pub fn multiplicities(&self) -> MultiplicityVector {
        MultiplicityVector(std::array::from_fn(|i| self.summands[i].multiplicity()))
    }
}

impl fmt::Display for ElementaryDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.summands {
            writeln!(f, "V{}: dim {}", s.type_index, s.space.dim())?;
        }
        Ok(())
    }
}

/// Peels off the ten elementary summands one after another. Every
/// "complement of X in W containing Y" is resolved by
/// [`Subspace::complement_within`], so the result is deterministic.
pub fn elementary_decompose(pair: &IsotropicPair) -> Result<ElementaryDecomposition> {
    let sp = pair.space();
    let (a, b) = (pair.a(), pair.b());
    let n = sp.dim();
    let zero = Subspace::zero(n);
    let full = Subspace::full(n);
    let r = sp.radical();
    let a_perp = sp.orthogonal(a)?;
    let b_perp = sp.orthogonal(b)?;
    let a_plus_b = a.sum(b)?;
    let a_cap_b = a.intersect(b)?;
    let mut trace = Trace::default();

    // radical parts
    let v1 = r.intersect(&a_plus_b)?.complement_within(&r, &zero)?;
    let c1 = v1.complement_within(&full, &a_plus_b)?;
    trace.push("V1", &v1);
    trace.push("C1", &c1);

    let v2 = a_cap_b.intersect(&r)?.intersect(&c1)?;
    let c2 = v2.complement_within(&c1, &zero)?;
    trace.push("V2", &v2);
    trace.push("C2", &c2);

    let v3 = a.intersect(&r)?.intersect(&c2)?;
    let c3 = v3.complement_within(&c2, &b.intersect(&c2)?)?;
    trace.push("V3", &v3);
    trace.push("C3", &c3);

    let v4 = b.intersect(&r)?.intersect(&c3)?;
    let c4 = v4.complement_within(&c3, &a.intersect(&c3)?)?;
    trace.push("V4", &v4);
    trace.push("C4", &c4);

    // type 5
    let a4 = a.intersect(&c4)?;
    let b4 = b.intersect(&c4)?;
    let ab4 = a_cap_b.intersect(&c4)?;
    let r4 = r.intersect(&c4)?;
    let q_r = r4.intersect(&a_plus_b)?;
    debug_assert_eq!(q_r, r4, "Q_R is not the radical of C4");
    debug_assert_eq!(r4, sp.radical_of(&c4)?, "radical does not distribute over C4");
    trace.push("Q_R", &q_r);

    let s = a4.intersect(&q_r.sum(b)?)?.sum(&b4.intersect(&q_r.sum(a)?)?)?;
    trace.push("S", &s);
    let q = ab4.complement_within(&s, &q_r)?;
    let q_a = a4.intersect(&q)?;
    let q_b = b4.intersect(&q)?;
    trace.push("Q", &q);
    trace.push("Q_A", &q_a);
    trace.push("Q_B", &q_b);
    debug_assert_eq!(q_r.sum(&q_a)?, q, "Q != Q_R + Q_A");
    debug_assert_eq!(q_r.dim() + q_a.dim(), q.dim());

    let t = ab4.complement_within(&a4.sum(&b4)?, &q)?;
    trace.push("T", &t);
    let a_prime = q_a.complement_within(&a4.intersect(&t)?, &zero)?;
    let b_prime = q_b.complement_within(&b4.intersect(&t)?, &zero)?;
    trace.push("A'", &a_prime);
    trace.push("B'", &b_prime);

    let keep = ab4.sum(&a_prime)?.sum(&b_prime)?;
    let split5 = reduction_split_with(sp, &c4, &r4, &q_a, &keep)?;
    let c5 = split5.symplectic_complement;
    let p = split5.dual_lagrangian;
    let v5 = q.sum(&p)?;
    trace.push("C5", &c5);
    trace.push("P", &p);
    trace.push("V5", &v5);

    // symplectic parts
    let d = a_cap_b.intersect(&c5)?;
    let split6 = reduction_split_with(sp, &c5, &zero, &d, &zero)?;
    let c6 = split6.symplectic_complement;
    let v6 = d.sum(&split6.dual_lagrangian)?;
    trace.push("C6", &c6);
    trace.push("P6", &split6.dual_lagrangian);
    trace.push("V6", &v6);

    let x = a.intersect(&b_perp)?.intersect(&c6)?;
    let split7 = reduction_split_with(sp, &c6, &zero, &x, &b.intersect(&c6)?)?;
    let c7 = split7.symplectic_complement;
    let v7 = x.sum(&split7.dual_lagrangian)?;
    trace.push("C7", &c7);
    trace.push("P7", &split7.dual_lagrangian);
    trace.push("V7", &v7);

    let y = b.intersect(&a_perp)?.intersect(&c7)?;
    let split8 = reduction_split_with(sp, &c7, &zero, &y, &a.intersect(&c7)?)?;
    let c8 = split8.symplectic_complement;
    let v8 = y.sum(&split8.dual_lagrangian)?;
    trace.push("C8", &c8);
    trace.push("P8", &split8.dual_lagrangian);
    trace.push("V8", &v8);

    let v9 = a.intersect(&c8)?.sum(&b.intersect(&c8)?)?;
    let v10 = a_perp.intersect(&b_perp)?.intersect(&c8)?;
    trace.push("V9", &v9);
    trace.push("V10", &v10);

    let spaces = [v1, v2, v3, v4, v5, v6, v7, v8, v9, v10];
    let mut summands = Vec::with_capacity(NUM_TYPES);
    for (i, v) in spaces.into_iter().enumerate() {
        summands.push(Summand {
            type_index: i + 1,
            a: a.intersect(&v)?,
            b: b.intersect(&v)?,
            space: v,
        });
    }
    Ok(ElementaryDecomposition { space: sp.clone(), summands, trace })
}
