//! Subgroup lattices and normal-subgroup enumeration.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;
use crate::util;

/// All subgroups of a group in canonical order, with the inclusion relation.
///
/// Index 0 is the trivial subgroup and the last index is the whole group.
pub struct Lattice {
    subs: Vec<Subgroup>,
    lookup: HashMap<FixedBitSet, usize>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    normal: FixedBitSet,
    cyclic_of: Vec<usize>,
    pub(crate) modular_memo: Mutex<HashMap<(u32, u32), bool>>,
}

impl Group {
    /// The full subgroup lattice, built once and cached.
    pub fn lattice(&self) -> Result<Arc<Lattice>> {
        self.caches
            .lattice
            .get_or_init(|| Lattice::build(self).map(Arc::new))
            .clone()
    }

    /// All normal subgroups in canonical order, without building the lattice.
    pub fn normal_subgroups(&self) -> Arc<Vec<Subgroup>> {
        self.caches
            .normals
            .get_or_init(|| Arc::new(self.enumerate_normal_subgroups()))
            .clone()
    }

    fn enumerate_normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes();
        let mut blocks: Vec<Subgroup> = Vec::new();
        for class in classes.iter().skip(1) {
            let c = self.closure(class);
            if !blocks.iter().any(|b| b.bits() == c.bits()) {
                blocks.push(c);
            }
        }
        let mut found: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut list = vec![self.trivial()];
        found.insert(list[0].bits().clone(), 0);
        let mut head = 0;
        while head < list.len() {
            let n = list[head].clone();
            for b in &blocks {
                if b.is_subgroup_of(&n) {
                    continue;
                }
                let j = self.closure_with(&n, b.gens());
                if !found.contains_key(j.bits()) {
                    found.insert(j.bits().clone(), list.len());
                    list.push(j);
                }
            }
            head += 1;
        }
        let mut list: Vec<Subgroup> = list.iter().map(|h| self.canonical(h)).collect();
        list.sort();
        list
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let normals = self.normal_subgroups();
        normals
            .iter()
            .skip(1)
            .filter(|n| {
                !normals
                    .iter()
                    .skip(1)
                    .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .cloned()
            .collect()
    }

    /// The join of all normal subgroups satisfying `keep`; the largest such
    /// subgroup when `keep` is closed under products of normal subgroups.
    pub(crate) fn largest_normal_with(&self, keep: impl Fn(&Subgroup) -> bool) -> Subgroup {
        let normals = self.normal_subgroups();
        let mut cur = self.trivial();
        for n in normals.iter() {
            if keep(n) && !n.is_subgroup_of(&cur) {
                cur = self.closure_with(&cur, n.gens());
            }
        }
        self.canonical(&cur)
    }
}

impl Lattice {
    fn build(g: &Group) -> Result<Lattice> {
        let limits = g.limits();
        if g.order() > limits.lattice_order_cap {
            return Err(Error::cap(
                "group order for lattice",
                limits.lattice_order_cap,
            ));
        }
        let n = g.order();

        // every subgroup is generated by its elements of prime-power order
        let mut cyclic_gens: Vec<Elem> = Vec::new();
        let mut seen_cyclic: HashMap<FixedBitSet, ()> = HashMap::new();
        for x in 1..n as Elem {
            if !util::is_prime_power(g.element_order(x) as u64) {
                continue;
            }
            let c = g.cyclic(x);
            if seen_cyclic.insert(c.bits().clone(), ()).is_none() {
                cyclic_gens.push(x);
            }
        }

        let mut found: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut subs = vec![g.trivial()];
        found.insert(subs[0].bits().clone(), 0);
        let mut head = 0;
        while head < subs.len() {
            let h = subs[head].clone();
            for &x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let j = g.closure_with(&h, &[x]);
                if !found.contains_key(j.bits()) {
                    if subs.len() >= limits.subgroup_cap {
                        return Err(Error::cap("subgroup count", limits.subgroup_cap));
                    }
                    found.insert(j.bits().clone(), subs.len());
                    subs.push(j);
                }
            }
            head += 1;
        }

        let mut subs: Vec<Subgroup> = subs.iter().map(|h| g.canonical(h)).collect();
        subs.sort();
        let m = subs.len();
        let lookup: HashMap<FixedBitSet, usize> = subs
            .iter()
            .enumerate()
            .map(|(i, h)| (h.bits().clone(), i))
            .collect();

        let mut below = vec![FixedBitSet::with_capacity(m); m];
        let mut above = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in i..m {
                if subs[j].order().is_multiple_of(subs[i].order())
                    && subs[i].is_subgroup_of(&subs[j])
                {
                    below[j].insert(i);
                    above[i].insert(j);
                }
            }
        }

        let mut normal = FixedBitSet::with_capacity(m);
        for (i, h) in subs.iter().enumerate() {
            if g.is_normal(h) {
                normal.insert(i);
            }
        }

        let cyclic_of: Vec<usize> = (0..n as Elem).map(|x| lookup[g.cyclic(x).bits()]).collect();

        Ok(Lattice {
            subs,
            lookup,
            below,
            above,
            normal,
            cyclic_of,
            modular_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    pub fn sub(&self, i: usize) -> &Subgroup {
        &self.subs[i]
    }

    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(h.bits()).copied()
    }

    pub fn index_of_bits(&self, bits: &FixedBitSet) -> Option<usize> {
        self.lookup.get(bits).copied()
    }

    /// Subgroups contained in `i` (including `i`).
    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    /// Subgroups containing `i` (including `i`).
    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal.contains(i)
    }

    /// Index of `⟨x⟩`.
    pub fn cyclic_of(&self, x: Elem) -> usize {
        self.cyclic_of[x as usize]
    }

    /// `⟨A, B⟩`: the least common upper bound, which comes first in canonical order.
    pub fn join(&self, i: usize, j: usize) -> usize {
        first_common(&self.above[i], &self.above[j]).expect("lattice has a top")
    }

    /// `A ∩ B`: the greatest common lower bound, which comes last in canonical order.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        last_common(&self.below[i], &self.below[j]).expect("lattice has a bottom")
    }

    /// `{H : a ≤ H ≤ b}` in canonical order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        let mut s = self.above[a].clone();
        s.intersect_with(&self.below[b]);
        s.ones().collect()
    }

    /// `a ⊴ b` inside the parent group; both must be lattice members with `a ≤ b`.
    pub fn is_normal_in(&self, g: &Group, a: usize, b: usize) -> bool {
        self.le(a, b) && g.normalizes(self.subs[b].gens(), &self.subs[a])
    }

    pub fn core_in(&self, g: &Group, a: usize, b: usize) -> usize {
        let c = g.core_in(&self.subs[a], &self.subs[b]).expect("a ≤ b");
        self.lookup[c.bits()]
    }

    /// Maximal subgroups of `i`.
    pub fn maximal_in(&self, i: usize) -> Vec<usize> {
        let cand: Vec<usize> = self.below[i].ones().filter(|&j| j != i).collect();
        cand.iter()
            .copied()
            .filter(|&j| !cand.iter().any(|&k| k != j && self.le(j, k)))
            .collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<usize> {
        self.maximal_in(self.top())
    }

    /// Intersection of the maximal subgroups of `i`; `i` itself when trivial.
    pub fn frattini_of(&self, i: usize) -> usize {
        self.maximal_in(i)
            .into_iter()
            .fold(i, |acc, m| self.meet(acc, m))
    }

    pub fn frattini(&self) -> usize {
        self.frattini_of(self.top())
    }

    pub fn of_order(&self, order: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.subs[i].order() == order)
            .collect()
    }

    pub fn sylow(&self, p: u64) -> Vec<usize> {
        let n = self.subs[self.top()].order() as u64;
        self.of_order(util::part(n, |q| q == p) as usize)
    }

    /// Hasse edges `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in self.maximal_in(j) {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }
}

/// The set `AB` and whether `AB = BA`.
pub fn product_set(g: &Group, a: &Subgroup, b: &Subgroup) -> (FixedBitSet, bool) {
    let mut ab = FixedBitSet::with_capacity(g.order());
    for x in a.elements() {
        for y in b.elements() {
            ab.insert(g.mul(x, y) as usize);
        }
    }
    let mut ba = FixedBitSet::with_capacity(g.order());
    for y in b.elements() {
        for x in a.elements() {
            ba.insert(g.mul(y, x) as usize);
        }
    }
    let equal = ab == ba;
    (ab, equal)
}

/// `AB = BA`, decided through `|⟨A,B⟩| · |A∩B| = |A| · |B|`.
pub fn permutes(l: &Lattice, a: usize, b: usize) -> bool {
    let j = l.sub(l.join(a, b)).order();
    let m = l.sub(l.meet(a, b)).order();
    j * m == l.sub(a).order() * l.sub(b).order()
}

fn first_common(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    for (k, (x, y)) in a.as_slice().iter().zip(b.as_slice()).enumerate() {
        let w = x & y;
        if w != 0 {
            return Some(k * usize::BITS as usize + w.trailing_zeros() as usize);
        }
    }
    None
}

fn last_common(a: &FixedBitSet, b: &FixedBitSet) -> Option<usize> {
    let sa = a.as_slice();
    let sb = b.as_slice();
    for k in (0..sa.len().min(sb.len())).rev() {
        let w = sa[k] & sb[k];
        if w != 0 {
            return Some(k * usize::BITS as usize + (usize::BITS - 1 - w.leading_zeros()) as usize);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use std::collections::HashSet;

    /// Oracle: closures of all pairs of elements (every subgroup of these
    /// groups is 2-generated).
    fn two_generated(g: &Group) -> HashSet<FixedBitSet> {
        let n = g.order() as Elem;
        let mut out = HashSet::new();
        for x in 0..n {
            for y in x..n {
                out.insert(g.closure(&[x, y]).bits().clone());
            }
        }
        out
    }

    #[test]
    fn subgroup_counts() {
        let s3 = symmetric(3).unwrap();
        // brute force over all 64 subsets
        let mut closed = 0;
        for mask in 0u32..64 {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<Elem> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            if set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&s3.mul(a, b))))
            {
                closed += 1;
            }
        }
        assert_eq!(closed, 6);
        assert_eq!(s3.lattice().unwrap().len(), 6);
        for g in [symmetric(4).unwrap(), quaternion8().unwrap()] {
            let l = g.lattice().unwrap();
            let oracle = two_generated(&g);
            assert_eq!(l.len(), oracle.len());
            for h in l.subgroups() {
                assert!(oracle.contains(h.bits()));
            }
        }
        assert_eq!(symmetric(4).unwrap().lattice().unwrap().len(), 30);
        assert_eq!(quaternion8().unwrap().lattice().unwrap().len(), 6);
    }

    #[test]
    fn normal_subgroups_match_lattice_filter() {
        for g in [
            symmetric(4).unwrap(),
            alternating(5).unwrap(),
            dihedral(12).unwrap(),
            cyclic(12).unwrap(),
        ] {
            let l = g.lattice().unwrap();
            let filtered: Vec<&FixedBitSet> = (0..l.len())
                .filter(|&i| l.is_normal(i))
                .map(|i| l.sub(i).bits())
                .collect();
            let normals = g.normal_subgroups();
            let direct: Vec<&FixedBitSet> = normals.iter().map(|n| n.bits()).collect();
            assert_eq!(filtered, direct);
        }
        let orders: Vec<usize> = symmetric(4)
            .unwrap()
            .normal_subgroups()
            .iter()
            .map(|n| n.order())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(alternating(5).unwrap().normal_subgroups().len(), 2);
        let mins = symmetric(4).unwrap().minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);
    }

    #[test]
    fn frattini_and_sylow() {
        let q8 = quaternion8().unwrap();
        let l = q8.lattice().unwrap();
        assert_eq!(l.sub(l.frattini()).order(), 2);
        let s3 = symmetric(3).unwrap();
        let l = s3.lattice().unwrap();
        assert_eq!(l.sub(l.frattini()).order(), 1);
        assert_eq!(l.sylow(3).len(), 1);
        let s4 = symmetric(4).unwrap();
        let l = s4.lattice().unwrap();
        assert_eq!(l.sylow(2).len(), 3);
        assert!(l.sylow(2).iter().all(|&i| l.sub(i).order() == 8));
    }

    #[test]
    fn products() {
        let s3 = symmetric(3).unwrap();
        let l = s3.lattice().unwrap();
        let a3 = l.of_order(3)[0];
        let twos = l.of_order(2);
        let (ab, ok) = product_set(&s3, l.sub(a3), l.sub(twos[0]));
        assert!(ok);
        assert_eq!(ab.count_ones(..), 6);
        let (ab, ok) = product_set(&s3, l.sub(twos[0]), l.sub(twos[1]));
        assert!(!ok);
        assert_eq!(ab.count_ones(..), 4);
        assert!(!permutes(&l, twos[0], twos[1]));
        assert_eq!(l.meet(a3, twos[0]), 0);
    }

    #[test]
    fn guard_on_large_groups() {
        let s7 = symmetric(7).unwrap();
        assert!(s7.lattice().err().unwrap().is_cap());
        // normal subgroups still work past the guard
        assert_eq!(s7.normal_subgroups().len(), 3);
    }
}
