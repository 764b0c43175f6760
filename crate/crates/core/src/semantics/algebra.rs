//! Resource monoids indexing the logical predicate.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::check::Mode;

/// Index of a monoid generator, displayed as `a1`, `a2`, ...
pub type Generator = u32;

/// An element of one of the resource algebras.
///
/// Words are stored as generator sequences. The commutative algebra keeps
/// them sorted and the trivial one keeps them empty, so structural equality
/// is equality in the algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(Vec<Generator>);

impl Element {
    pub fn epsilon() -> Self {
        Element(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "a{g}")?;
        }
        Ok(())
    }
}

pub trait ResourceAlgebra: Sync {
    fn name(&self) -> &'static str;

    fn is_commutative(&self) -> bool;

    /// Brings an arbitrary generator sequence into the algebra.
    fn element(&self, gens: Vec<Generator>) -> Element;

    fn unit(&self) -> Element {
        Element::epsilon()
    }

    fn generator(&self, g: Generator) -> Element {
        self.element(vec![g])
    }

    fn op(&self, a: &Element, b: &Element) -> Element {
        let mut gens = a.0.clone();
        gens.extend_from_slice(&b.0);
        self.element(gens)
    }

    /// Every pair `(m1, m2)` with `m1 · m2 = m`, each listed once.
    fn splits(&self, m: &Element) -> Vec<(Element, Element)>;
}

/// Words over the generators; the algebra of the ordered discipline.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeMonoid;

/// Multisets over the generators; the algebra of the linear discipline.
#[derive(Clone, Copy, Debug, Default)]
pub struct FreeCommMonoid;

/// The one-element monoid; every resource is ε.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialMonoid;

impl ResourceAlgebra for FreeMonoid {
    fn name(&self) -> &'static str {
        "free"
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn element(&self, gens: Vec<Generator>) -> Element {
        Element(gens)
    }

    fn splits(&self, m: &Element) -> Vec<(Element, Element)> {
        (0..=m.0.len())
            .map(|i| (Element(m.0[..i].to_vec()), Element(m.0[i..].to_vec())))
            .collect()
    }
}

impl ResourceAlgebra for FreeCommMonoid {
    fn name(&self) -> &'static str {
        "comm"
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn element(&self, mut gens: Vec<Generator>) -> Element {
        gens.sort_unstable();
        Element(gens)
    }

    fn splits(&self, m: &Element) -> Vec<(Element, Element)> {
        let mut counts: BTreeMap<Generator, usize> = BTreeMap::new();
        for g in &m.0 {
            *counts.entry(*g).or_default() += 1;
        }
        let counts: Vec<(Generator, usize)> = counts.into_iter().collect();
        let mut out = Vec::new();
        let mut take = vec![0usize; counts.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (&(g, c), &t) in counts.iter().zip(&take) {
                left.extend(std::iter::repeat_n(g, t));
                right.extend(std::iter::repeat_n(g, c - t));
            }
            out.push((Element(left), Element(right)));
            // Odometer over sub-multiplicities.
            let mut i = 0;
            loop {
                if i == take.len() {
                    return out;
                }
                if take[i] < counts[i].1 {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }
}

impl ResourceAlgebra for TrivialMonoid {
    fn name(&self) -> &'static str {
        "trivial"
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn element(&self, _gens: Vec<Generator>) -> Element {
        Element::epsilon()
    }

    fn splits(&self, _m: &Element) -> Vec<(Element, Element)> {
        vec![(Element::epsilon(), Element::epsilon())]
    }
}

/// Selector for the three algebras, as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Free,
    Comm,
    Trivial,
}

impl AlgebraKind {
    pub fn algebra(self) -> &'static dyn ResourceAlgebra {
        match self {
            AlgebraKind::Free => &FreeMonoid,
            AlgebraKind::Comm => &FreeCommMonoid,
            AlgebraKind::Trivial => &TrivialMonoid,
        }
    }

    /// The algebra matching a typing discipline.
    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Ordered => AlgebraKind::Free,
            Mode::Linear => AlgebraKind::Comm,
            Mode::Unrestricted => AlgebraKind::Trivial,
        }
    }
}
