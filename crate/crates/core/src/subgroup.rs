use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use crate::group::Elem;

/// A subgroup of some parent group, stored as a set of element indices.
///
/// The ordering is the canonical one used everywhere for tie-breaking:
/// first by order, then lexicographically by the sorted element list.
/// Equality and hashing look at the element set only, never the generators.
#[derive(Clone)]
pub struct Subgroup {
    bits: FixedBitSet,
    order: usize,
    gens: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_parts(bits: FixedBitSet, gens: Vec<Elem>) -> Self {
        let order = bits.count_ones(..);
        Subgroup { bits, order, gens }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// A generating set; not necessarily minimal.
    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|i| i as Elem)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.gens)
    }
}
