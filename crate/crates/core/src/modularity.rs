//! Modular, quasinormal and related lattice embeddings.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::lattice::{permutes, Lattice};
use crate::sigma::{self, cached_reach, chain_reach, Reach, SigmaPartition};
use crate::subgroup::Subgroup;
use crate::util;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModularStrategy {
    /// Both Kurosh identities over the whole interval below `K`.
    Direct,
    /// `M` modular in `⟨x, M⟩` for every prime-power-order `x ∈ K`.
    #[default]
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuasinormalStrategy {
    /// Permutes with every subgroup.
    Full,
    /// Permutes with every cyclic subgroup.
    #[default]
    Cyclic,
}

/// Why a subgroup `M` fails to be modular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularWitness {
    /// `X ≤ Z` with `⟨X, M ∩ Z⟩ ≠ ⟨X, M⟩ ∩ Z`.
    Lower { x: usize, z: usize },
    /// `M ≤ Z` with `⟨M, Y ∩ Z⟩ ≠ ⟨M, Y⟩ ∩ Z`.
    Upper { y: usize, z: usize },
    /// `M` is not modular in `⟨x, M⟩`.
    Element(Elem),
}

/// Kurosh identities for `m` inside the lattice member `k`.
pub fn modular_direct(l: &Lattice, m: usize, k: usize) -> Option<ModularWitness> {
    let inside: Vec<usize> = l.below(k).ones().collect();
    for &z in &inside {
        let mz = l.meet(m, z);
        for x in l.below(z).ones() {
            if l.join(x, mz) != l.meet(l.join(x, m), z) {
                return Some(ModularWitness::Lower { x, z });
            }
        }
    }
    for &z in &inside {
        if !l.le(m, z) {
            continue;
        }
        for &y in &inside {
            if l.join(m, l.meet(y, z)) != l.meet(l.join(m, y), z) {
                return Some(ModularWitness::Upper { y, z });
            }
        }
    }
    None
}

/// Modularity via the elements of prime-power order of `k`.
pub fn modular_reduced(g: &Group, l: &Lattice, m: usize, k: usize) -> Option<ModularWitness> {
    let mut done = FixedBitSet::with_capacity(l.len());
    for x in l.sub(k).elements() {
        if x == 0 || !util::is_prime_power(g.element_order(x) as u64) {
            continue;
        }
        let j = l.join(m, l.cyclic_of(x));
        if j == m || done.put(j) {
            continue;
        }
        if l.is_normal_in(g, m, j) {
            continue;
        }
        if modular_direct(l, m, j).is_some() {
            return Some(ModularWitness::Element(x));
        }
    }
    None
}

pub fn modular_in(
    g: &Group,
    l: &Lattice,
    m: usize,
    k: usize,
    strategy: ModularStrategy,
) -> Option<ModularWitness> {
    match strategy {
        ModularStrategy::Direct => modular_direct(l, m, k),
        ModularStrategy::Reduced => modular_reduced(g, l, m, k),
    }
}

/// `m` modular in `k`, memoized per lattice.
pub fn is_modular_in(g: &Group, l: &Lattice, m: usize, k: usize) -> bool {
    if m == k || l.is_normal_in(g, m, k) {
        return true;
    }
    let key = (m as u32, k as u32);
    if let Some(&v) = l.modular_memo.lock().unwrap().get(&key) {
        return v;
    }
    let v = modular_reduced(g, l, m, k).is_none();
    l.modular_memo.lock().unwrap().insert(key, v);
    v
}

pub fn is_modular(
    g: &Group,
    a: &Subgroup,
    strategy: ModularStrategy,
) -> Result<(bool, Option<ModularWitness>)> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    let w = modular_in(g, &l, i, l.top(), strategy);
    Ok((w.is_none(), w))
}

/// `a` permutes with every subgroup of `k`; on failure the least offending
/// subgroup index.
pub fn quasinormal_in(
    l: &Lattice,
    a: usize,
    k: usize,
    strategy: QuasinormalStrategy,
) -> std::result::Result<(), usize> {
    match strategy {
        QuasinormalStrategy::Full => match l.below(k).ones().find(|&h| !permutes(l, a, h)) {
            Some(h) => Err(h),
            None => Ok(()),
        },
        QuasinormalStrategy::Cyclic => {
            let mut bad: Option<usize> = None;
            for x in l.sub(k).elements() {
                let c = l.cyclic_of(x);
                if !permutes(l, a, c) {
                    bad = Some(bad.map_or(c, |b| b.min(c)));
                }
            }
            match bad {
                Some(c) => Err(c),
                None => Ok(()),
            }
        }
    }
}

pub fn is_quasinormal(g: &Group, a: &Subgroup, strategy: QuasinormalStrategy) -> Result<bool> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    Ok(quasinormal_in(&l, i, l.top(), strategy).is_ok())
}

/// Submodularity between all pairs.
pub fn submodular_reach(g: &Group) -> Result<Arc<Reach>> {
    cached_reach(g, "submodular".into(), || {
        let l = g.lattice()?;
        Ok(chain_reach(&l, |k, h| is_modular_in(g, &l, k, h)))
    })
}

/// Modular and σ-subnormal in `k`.
pub fn is_sigma_quasinormal_in(
    s: &SigmaPartition,
    g: &Group,
    l: &Lattice,
    a: usize,
    k: usize,
) -> Result<bool> {
    Ok(sigma::is_sigma_subnormal_in(s, g, a, k)? && is_modular_in(g, l, a, k))
}

pub fn is_sigma_quasinormal(s: &SigmaPartition, g: &Group, a: &Subgroup) -> Result<bool> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    is_sigma_quasinormal_in(s, g, &l, i, l.top())
}

/// σ-subquasinormality between all pairs.
pub fn sigma_subquasinormal_reach(s: &SigmaPartition, g: &Group) -> Result<Arc<Reach>> {
    let sn = sigma::sigma_subnormal_reach(s, g)?;
    cached_reach(g, format!("ssq:{s}"), || {
        let l = g.lattice()?;
        Ok(chain_reach(&l, |k, h| {
            sn[k].contains(h) && is_modular_in(g, &l, k, h)
        }))
    })
}

pub fn is_submodular(g: &Group, a: &Subgroup) -> Result<bool> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    Ok(submodular_reach(g)?[i].contains(l.top()))
}

pub fn is_sigma_subquasinormal(s: &SigmaPartition, g: &Group, a: &Subgroup) -> Result<bool> {
    let l = g.lattice()?;
    let i = l.index_of(a).ok_or(Error::NotContained)?;
    Ok(sigma_subquasinormal_reach(s, g)?[i].contains(l.top()))
}

/// Every subgroup of `k` is normal in `k`.
pub fn is_dedekind_in(g: &Group, l: &Lattice, k: usize) -> bool {
    l.below(k).ones().all(|i| l.is_normal_in(g, i, k))
}

/// Every subgroup of `k` is modular in `k`.
pub fn is_m_group_in(g: &Group, l: &Lattice, k: usize) -> bool {
    l.below(k).ones().all(|i| is_modular_in(g, l, i, k))
}

pub fn is_dedekind(g: &Group) -> Result<bool> {
    let l = g.lattice()?;
    Ok((0..l.len()).all(|i| l.is_normal(i)))
}

pub fn is_iwasawa(g: &Group) -> Result<bool> {
    let l = g.lattice()?;
    Ok((0..l.len()).all(|i| quasinormal_in(&l, i, l.top(), QuasinormalStrategy::Cyclic).is_ok()))
}

pub fn is_m_group(g: &Group) -> Result<bool> {
    let l = g.lattice()?;
    Ok(is_m_group_in(g, &l, l.top()))
}

/// A sublattice `A < B`, `C` with `A ∨ C = B ∨ C` and `A ∧ C = B ∧ C`, if any.
pub fn find_pentagon(l: &Lattice) -> Option<(usize, usize, usize)> {
    let n = l.len();
    for b in 0..n {
        for a in l.below(b).ones() {
            if a == b {
                continue;
            }
            for c in 0..n {
                if l.join(a, c) == l.join(b, c) && l.meet(a, c) == l.meet(b, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Every `x ∈ xs` maps each `d ∈ D` into `⟨d⟩`.
pub fn induces_power_automorphisms(g: &Group, xs: &[Elem], d: &Subgroup) -> Result<bool> {
    if !g.normalizes(xs, d) {
        return Err(Error::NotNormalized);
    }
    for y in d.elements() {
        let c = g.cyclic(y);
        if !xs.iter().all(|&x| c.contains(g.conj(y, x))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A non-abelian group `A ⋊ ⟨t⟩` with `A` elementary abelian of exponent `p`
/// and `t` of prime order `q ≠ p` acting as a non-trivial power automorphism.
#[derive(Debug, Clone)]
pub struct PGroupShape {
    pub p: u64,
    pub q: u64,
    pub base: Subgroup,
    pub top: Elem,
}

pub fn detect_p_group_shape(g: &Group) -> Option<PGroupShape> {
    if g.is_abelian() {
        return None;
    }
    let n = g.order() as u64;
    let primes = util::prime_divisors(n);
    if primes.len() != 2 {
        return None;
    }
    for (p, q) in [(primes[0], primes[1]), (primes[1], primes[0])] {
        if util::part(n, |r| r == q) != q {
            continue;
        }
        let base = sigma::o_pi(g, |r| r == p);
        if base.order() as u64 != util::part(n, |r| r == p) {
            continue;
        }
        let elementary = base
            .gens()
            .iter()
            .all(|&a| base.gens().iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
            && base
                .elements()
                .all(|x| x == 0 || g.element_order(x) as u64 == p);
        if !elementary {
            continue;
        }
        let t = (0..n as Elem).find(|&x| g.element_order(x) as u64 == q)?;
        let power = induces_power_automorphisms(g, &[t], &base).unwrap_or(false);
        let trivial = base.elements().all(|y| g.conj(y, t) == y);
        if power && !trivial {
            return Some(PGroupShape { p, q, base, top: t });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn d8_reflection(g: &Group, l: &Lattice) -> usize {
        // a non-central involution generating an order-2 subgroup
        let z = g.center();
        (0..l.len())
            .find(|&i| l.sub(i).order() == 2 && !l.sub(i).is_subgroup_of(&z))
            .unwrap()
    }

    #[test]
    fn reflection_in_d8_is_not_modular() {
        let g = dihedral(8).unwrap();
        let l = g.lattice().unwrap();
        assert_eq!(l.len(), 10);
        let s = d8_reflection(&g, &l);
        assert!(modular_direct(&l, s, l.top()).is_some());
        assert!(modular_reduced(&g, &l, s, l.top()).is_some());
        assert!(submodular_reach(&g).unwrap()[s].contains(l.top()));
        assert!(!is_m_group(&g).unwrap());
        assert!(find_pentagon(&l).is_some());
    }

    #[test]
    fn q8_and_s3_lattices() {
        let q8 = quaternion8().unwrap();
        assert!(is_dedekind(&q8).unwrap());
        assert!(is_iwasawa(&q8).unwrap());
        assert!(is_m_group(&q8).unwrap());
        let s3 = symmetric(3).unwrap();
        assert!(!is_dedekind(&s3).unwrap());
        assert!(is_m_group(&s3).unwrap());
        let l = s3.lattice().unwrap();
        assert!(find_pentagon(&l).is_none());
        let t = l.of_order(2)[0];
        assert!(quasinormal_in(&l, t, l.top(), QuasinormalStrategy::Full).is_err());
        assert!(quasinormal_in(&l, t, l.top(), QuasinormalStrategy::Cyclic).is_err());
    }

    #[test]
    fn involution_in_a5_is_not_modular() {
        let g = alternating(5).unwrap();
        let l = g.lattice().unwrap();
        let t = l.of_order(2)[0];
        assert!(modular_reduced(&g, &l, t, l.top()).is_some());
    }

    #[test]
    fn power_automorphisms() {
        let c7 = cyclic(7).unwrap();
        let g = semidirect_product(&c7, &cyclic(3).unwrap(), &[power_action(&c7, 2)]).unwrap();
        let d = g
            .normal_subgroups()
            .iter()
            .find(|n| n.order() == 7)
            .unwrap()
            .clone();
        let all: Vec<Elem> = (0..g.order() as Elem).collect();
        assert!(induces_power_automorphisms(&g, &all, &d).unwrap());
        let a4 = alternating(4).unwrap();
        let v4 = a4
            .normal_subgroups()
            .iter()
            .find(|n| n.order() == 4)
            .unwrap()
            .clone();
        let all: Vec<Elem> = (0..12).collect();
        assert!(!induces_power_automorphisms(&a4, &all, &v4).unwrap());
        let z = a4.trivial();
        assert!(induces_power_automorphisms(&a4, &all, &z).unwrap());
        let l = a4.lattice().unwrap();
        let c3 = l.sub(l.of_order(3)[0]).clone();
        assert_eq!(
            induces_power_automorphisms(&a4, &all, &c3),
            Err(Error::NotNormalized)
        );
    }

    #[test]
    fn p_group_shapes() {
        let c7 = cyclic(7).unwrap();
        let g = semidirect_product(&c7, &cyclic(3).unwrap(), &[power_action(&c7, 2)]).unwrap();
        let shape = detect_p_group_shape(&g).unwrap();
        assert_eq!((shape.p, shape.q), (7, 3));
        let s = detect_p_group_shape(&symmetric(3).unwrap()).unwrap();
        assert_eq!((s.p, s.q), (3, 2));
        assert!(detect_p_group_shape(&quaternion8().unwrap()).is_none());
        assert!(detect_p_group_shape(&alternating(4).unwrap()).is_none());
    }
}
