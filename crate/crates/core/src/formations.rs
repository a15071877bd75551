//! Chief series, formation membership and residuals.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::sigma::{self, SigmaPartition};
use crate::subgroup::Subgroup;
use crate::util;

/// One chief factor `upper/lower`.
#[derive(Debug, Clone)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub order: usize,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub is_simple: bool,
}

impl ChiefFactor {
    /// Isomorphism-invariant summary used to compare series.
    pub fn signature(&self) -> (usize, bool, bool, bool) {
        (self.order, self.is_abelian, self.is_cyclic, self.is_simple)
    }

    pub fn is_sigma_primary(&self, s: &SigmaPartition) -> bool {
        s.is_primary_number(self.order as u64)
    }
}

#[derive(Debug, Clone)]
pub struct ChiefSeries {
    factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// Factors from the bottom up.
    pub fn factors(&self) -> &[ChiefFactor] {
        &self.factors
    }

    /// Sorted factor signatures, the Jordan–Hölder invariant.
    pub fn signatures(&self) -> Vec<(usize, bool, bool, bool)> {
        let mut v: Vec<_> = self.factors.iter().map(|f| f.signature()).collect();
        v.sort_unstable();
        v
    }
}

/// The formations the engine can test membership in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormationId {
    /// Abelian of squarefree exponent.
    AbelianSqfree,
    Nilpotent,
    SigmaNilpotent,
    Soluble,
    SigmaSoluble,
    Supersoluble,
    SigmaSupersoluble,
    /// Every chief factor simple.
    Sc,
    /// Every chief factor below the σ-nilpotent residual simple.
    SigmaSc,
}

impl FormationId {
    pub const ALL: [FormationId; 9] = [
        FormationId::AbelianSqfree,
        FormationId::Nilpotent,
        FormationId::SigmaNilpotent,
        FormationId::Soluble,
        FormationId::SigmaSoluble,
        FormationId::Supersoluble,
        FormationId::SigmaSupersoluble,
        FormationId::Sc,
        FormationId::SigmaSc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormationId::AbelianSqfree => "abelian-sqfree",
            FormationId::Nilpotent => "nilpotent",
            FormationId::SigmaNilpotent => "sigma-nilpotent",
            FormationId::Soluble => "soluble",
            FormationId::SigmaSoluble => "sigma-soluble",
            FormationId::Supersoluble => "supersoluble",
            FormationId::SigmaSupersoluble => "sigma-supersoluble",
            FormationId::Sc => "sc",
            FormationId::SigmaSc => "sigma-sc",
        }
    }

    pub fn parse(s: &str) -> Option<FormationId> {
        FormationId::ALL.into_iter().find(|f| f.name() == s)
    }

    fn depends_on_sigma(self) -> bool {
        matches!(
            self,
            FormationId::SigmaNilpotent
                | FormationId::SigmaSoluble
                | FormationId::SigmaSupersoluble
                | FormationId::SigmaSc
        )
    }
}

impl fmt::Display for FormationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `upper/lower` as a group in its own right.
pub fn section(g: &Group, lower: &Subgroup, upper: &Subgroup) -> Result<Arc<Group>> {
    if !lower.is_subgroup_of(upper) {
        return Err(Error::NotContained);
    }
    if upper.order() == g.order() {
        return Ok(g.quotient(lower)?.group.clone());
    }
    let (h, embed) = g.subgroup_as_group(upper)?;
    let mut bits = FixedBitSet::with_capacity(h.order());
    for (j, &x) in embed.iter().enumerate() {
        if lower.contains(x) {
            bits.insert(j);
        }
    }
    let k = h.subgroup_from_bits(bits);
    Ok(h.quotient(&k)?.group.clone())
}

fn factor(g: &Group, lower: &Subgroup, upper: &Subgroup) -> Result<ChiefFactor> {
    let order = upper.order() / lower.order();
    let gens = upper.gens();
    let is_abelian = gens
        .iter()
        .all(|&a| gens.iter().all(|&b| lower.contains(g.commutator(a, b))));
    let is_simple = if is_abelian {
        util::is_prime(order as u64)
    } else {
        section(g, lower, upper)?.normal_subgroups().len() == 2
    };
    Ok(ChiefFactor {
        lower: lower.clone(),
        upper: upper.clone(),
        order,
        is_abelian,
        is_cyclic: is_abelian && util::is_prime(order as u64),
        is_simple,
    })
}

/// Chief series of `G` from `bottom` to `top` (both normal in `G`), taking at
/// each step the canonically least minimal normal subgroup of `G/K`, or a
/// random one when `rng` is given.
pub fn chief_series_between(
    g: &Group,
    bottom: &Subgroup,
    top: &Subgroup,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Vec<ChiefFactor>> {
    let normals = g.normal_subgroups();
    let mut cur = bottom.clone();
    let mut out = Vec::new();
    while cur.order() < top.order() {
        let above: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| n.order() > cur.order() && cur.is_subgroup_of(n) && n.is_subgroup_of(top))
            .collect();
        let minimal: Vec<&Subgroup> = above
            .iter()
            .copied()
            .filter(|n| {
                !above
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .collect();
        let next = match rng.as_deref_mut() {
            Some(r) => *minimal.choose(r).expect("top lies above"),
            None => minimal[0],
        };
        out.push(factor(g, &cur, next)?);
        cur = next.clone();
    }
    Ok(out)
}

pub fn chief_series(g: &Group) -> Result<Arc<ChiefSeries>> {
    if let Some(c) = g.caches.chief.get() {
        return Ok(c.clone());
    }
    let factors = chief_series_between(g, &g.trivial(), &g.whole(), None)?;
    let series = Arc::new(ChiefSeries { factors });
    Ok(g.caches.chief.get_or_init(|| series).clone())
}

/// A chief series built with random choices among minimal normal subgroups.
pub fn chief_series_seeded(g: &Group, seed: u64) -> Result<ChiefSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = chief_series_between(g, &g.trivial(), &g.whole(), Some(&mut rng))?;
    Ok(ChiefSeries { factors })
}

/// Chief factors of `G` below the normal subgroup `d`.
pub fn chief_factors_below(g: &Group, d: &Subgroup) -> Result<Vec<ChiefFactor>> {
    chief_series_between(g, &g.trivial(), d, None)
}

fn count_elements_in(g: &Group, keep: impl Fn(u64) -> bool) -> usize {
    (0..g.order() as Elem)
        .filter(|&x| {
            util::prime_divisors(g.element_order(x) as u64)
                .into_iter()
                .all(&keep)
        })
        .count()
}

pub fn is_nilpotent(g: &Group) -> bool {
    let n = g.order() as u64;
    util::prime_divisors(n)
        .into_iter()
        .all(|p| count_elements_in(g, |q| q == p) as u64 == util::part(n, |q| q == p))
}

pub fn is_member(f: FormationId, s: &SigmaPartition, g: &Group) -> Result<bool> {
    let key = if f.depends_on_sigma() {
        format!("{f}|{s}")
    } else {
        f.to_string()
    };
    if let Some(&v) = g.caches.membership.lock().unwrap().get(&key) {
        return Ok(v);
    }
    let v = match f {
        FormationId::AbelianSqfree => g.is_abelian() && util::is_squarefree(g.exponent() as u64),
        FormationId::Nilpotent => is_nilpotent(g),
        FormationId::SigmaNilpotent => sigma::is_sigma_nilpotent(s, g),
        FormationId::Soluble => g.is_soluble(),
        FormationId::SigmaSoluble => sigma::is_sigma_soluble(s, g)?,
        FormationId::Supersoluble => chief_series(g)?.factors().iter().all(|c| c.is_cyclic),
        FormationId::SigmaSupersoluble => {
            let d = residual(FormationId::SigmaNilpotent, s, g)?;
            chief_factors_below(g, &d)?.iter().all(|c| c.is_cyclic)
        }
        FormationId::Sc => chief_series(g)?.factors().iter().all(|c| c.is_simple),
        FormationId::SigmaSc => {
            let d = residual(FormationId::SigmaNilpotent, s, g)?;
            chief_factors_below(g, &d)?.iter().all(|c| c.is_simple)
        }
    };
    g.caches.membership.lock().unwrap().insert(key, v);
    Ok(v)
}

/// `G^F`: the intersection of all normal `N` with `G/N ∈ F`.
pub fn residual(f: FormationId, s: &SigmaPartition, g: &Group) -> Result<Subgroup> {
    let normals = g.normal_subgroups();
    let mut bits = g.whole().bits().clone();
    for n in normals.iter() {
        if n.bits().is_superset(&bits) {
            continue;
        }
        let inside = if n.is_trivial() {
            is_member(f, s, g)?
        } else {
            is_member(f, s, &g.quotient(n)?.group)?
        };
        if inside {
            bits.intersect_with(n.bits());
        }
    }
    Ok(g.subgroup_from_bits(bits))
}

/// Whether the normal subgroup `h` is soluble.
pub fn is_soluble_subgroup(g: &Group, h: &Subgroup) -> bool {
    let mut cur = h.clone();
    while !cur.is_trivial() {
        let next = g.derived_subgroup(&cur);
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
    true
}

/// `G_𝔖`, the largest soluble normal subgroup.
pub fn soluble_radical(g: &Group) -> Subgroup {
    g.largest_normal_with(|n| is_soluble_subgroup(g, n))
}

/// `C_G(H/K)`: elements acting trivially on the section.
pub fn centralizer_of_section(g: &Group, lower: &Subgroup, upper: &Subgroup) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() as Elem {
        if upper
            .gens()
            .iter()
            .all(|&h| lower.contains(g.commutator(h, x)))
        {
            bits.insert(x as usize);
        }
    }
    g.subgroup_from_bits(bits)
}

/// Whether `upper/lower` is a chief factor of `G`.
pub fn is_chief_factor(g: &Group, lower: &Subgroup, upper: &Subgroup) -> bool {
    if !(lower.order() < upper.order()
        && lower.is_subgroup_of(upper)
        && g.is_normal(lower)
        && g.is_normal(upper))
    {
        return false;
    }
    !g.normal_subgroups().iter().any(|n| {
        n.order() > lower.order()
            && n.order() < upper.order()
            && lower.is_subgroup_of(n)
            && n.is_subgroup_of(upper)
    })
}

/// `H/K` is a `σ_i`-group and `G/C_G(H/K)` is a `σ_i`-group, for one class.
pub fn is_sigma_central(
    s: &SigmaPartition,
    g: &Group,
    lower: &Subgroup,
    upper: &Subgroup,
) -> Result<bool> {
    if !is_chief_factor(g, lower, upper) {
        return Err(Error::NotChiefFactor);
    }
    let classes = s.classes_of((upper.order() / lower.order()) as u64);
    if classes.len() != 1 {
        return Ok(false);
    }
    let c = centralizer_of_section(g, lower, upper);
    Ok(s.is_number_in((g.order() / c.order()) as u64, &classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    #[test]
    fn chief_series_of_s4() {
        let g = symmetric(4).unwrap();
        let orders: Vec<usize> = chief_series(&g)
            .unwrap()
            .factors()
            .iter()
            .map(|f| f.order)
            .collect();
        assert_eq!(orders, vec![4, 3, 2]);
        let a5 = alternating(5).unwrap();
        let c = chief_series(&a5).unwrap();
        assert_eq!(c.factors().len(), 1);
        assert!(c.factors()[0].is_simple && !c.factors()[0].is_cyclic);
    }

    #[test]
    fn residuals_of_s4() {
        let g = symmetric(4).unwrap();
        let s1 = SigmaPartition::sigma1();
        assert_eq!(
            residual(FormationId::Nilpotent, &s1, &g).unwrap().order(),
            12
        );
        assert_eq!(
            residual(FormationId::Supersoluble, &s1, &g)
                .unwrap()
                .order(),
            4
        );
        let s3 = symmetric(3).unwrap();
        assert_eq!(
            residual(FormationId::AbelianSqfree, &s1, &s3)
                .unwrap()
                .order(),
            3
        );
    }

    #[test]
    fn v4_in_s4_is_not_central() {
        let g = symmetric(4).unwrap();
        let s1 = SigmaPartition::sigma1();
        let v4 = g
            .normal_subgroups()
            .iter()
            .find(|n| n.order() == 4)
            .unwrap()
            .clone();
        assert!(!is_sigma_central(&s1, &g, &g.trivial(), &v4).unwrap());
        let a4 = g
            .normal_subgroups()
            .iter()
            .find(|n| n.order() == 12)
            .unwrap()
            .clone();
        assert_eq!(
            is_sigma_central(&s1, &g, &g.trivial(), &a4),
            Err(Error::NotChiefFactor)
        );
    }
}
