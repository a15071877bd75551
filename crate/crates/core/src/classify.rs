//! Transitivity classes decided by their definitions and by structural
//! characterizations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formations::{self, FormationId};
use crate::group::{Elem, Group, Quotient};
use crate::lattice::Lattice;
use crate::modularity::{self, ModularStrategy, QuasinormalStrategy};
use crate::sigma::{self, chain_reach, SigmaClass, SigmaPartition};
use crate::subgroup::Subgroup;
use crate::util;

pub const NOT_SIGMA_FULL: &str = "not sigma-full";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Subnormal subgroups are normal.
    T,
    /// Subnormal subgroups are quasinormal.
    PT,
    /// Subnormal subgroups are S-permutable.
    PST,
    /// σ-subnormal subgroups are σ-permutable.
    PsigmaT,
    /// σ-subnormal subgroups are modular.
    QsigmaT,
    /// σ-subquasinormal subgroups are σ-quasinormal.
    MsigmaT,
    /// σ-subnormal subgroups are normal.
    TSigma,
    /// Submodular subgroups are modular.
    MT,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::T,
        Property::PT,
        Property::PST,
        Property::PsigmaT,
        Property::QsigmaT,
        Property::MsigmaT,
        Property::TSigma,
        Property::MT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::T => "T",
            Property::PT => "PT",
            Property::PST => "PST",
            Property::PsigmaT => "PsigmaT",
            Property::QsigmaT => "QsigmaT",
            Property::MsigmaT => "MsigmaT",
            Property::TSigma => "T_sigma",
            Property::MT => "MT",
        }
    }

    pub fn depends_on_sigma(self) -> bool {
        matches!(
            self,
            Property::PsigmaT | Property::QsigmaT | Property::MsigmaT | Property::TSigma
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Invalid(format!("unknown property `{s}`")))
    }
}

/// How PσT is decided on a σ-full group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsigmaTMode {
    /// Every σ-subnormal subgroup is σ-permutable.
    #[default]
    Subnormal,
    /// σ-permutability is transitive over all lattice pairs.
    Transitive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Strategies {
    pub modular: ModularStrategy,
    pub quasinormal: QuasinormalStrategy,
    pub psigma: PsigmaTMode,
}

impl Strategies {
    /// The slow definitional strategies everywhere.
    pub fn oracle() -> Self {
        Strategies {
            modular: ModularStrategy::Direct,
            quasinormal: QuasinormalStrategy::Full,
            psigma: PsigmaTMode::Transitive,
        }
    }
}

/// Outcome of a universally quantified class test. `value` is `None` when the
/// question is undefined for the group (see `flags`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: Option<bool>,
    pub witness: Option<Subgroup>,
    pub flags: Vec<String>,
}

impl Verdict {
    fn from_witness(l: &Lattice, w: Option<usize>) -> Self {
        Verdict {
            value: Some(w.is_none()),
            witness: w.map(|i| l.sub(i).clone()),
            flags: Vec::new(),
        }
    }

    fn undefined(flag: &str) -> Self {
        Verdict {
            value: None,
            witness: None,
            flags: vec![flag.to_string()],
        }
    }
}

fn modular_with(g: &Group, l: &Lattice, a: usize, k: usize, st: ModularStrategy) -> bool {
    match st {
        ModularStrategy::Reduced => modularity::is_modular_in(g, l, a, k),
        ModularStrategy::Direct => a == k || modularity::modular_direct(l, a, k).is_none(),
    }
}

/// Least `i` with `premise(i)` and not `conclusion(i)`.
fn first_failure(
    l: &Lattice,
    premise: impl Fn(usize) -> bool,
    conclusion: impl Fn(usize) -> bool,
) -> Option<usize> {
    (0..l.len()).find(|&i| premise(i) && !conclusion(i))
}

/// Decide `p` for `G` from its definition.
pub fn classify(g: &Group, s: &SigmaPartition, p: Property, st: &Strategies) -> Result<Verdict> {
    let l = g.lattice()?;
    let top = l.top();
    let s1 = SigmaPartition::sigma1();
    let w = match p {
        Property::T => {
            let sub = sigma::subnormal_reach(g)?;
            first_failure(&l, |i| sub[i].contains(top), |i| l.is_normal(i))
        }
        Property::PT => {
            let sub = sigma::subnormal_reach(g)?;
            first_failure(
                &l,
                |i| sub[i].contains(top),
                |i| modular_with(g, &l, i, top, st.modular),
            )
        }
        Property::PST => {
            let sub = sigma::subnormal_reach(g)?;
            first_failure(
                &l,
                |i| sub[i].contains(top),
                |i| sigma::is_sigma_permutable_in(&s1, g, &l, i, top),
            )
        }
        Property::PsigmaT => {
            if !sigma::is_sigma_full_in(s, &l, top) {
                return Ok(Verdict::undefined(NOT_SIGMA_FULL));
            }
            if st.psigma == PsigmaTMode::Transitive {
                return classify_transitive(g, s, p, st).map(|v| v.expect("transitive form"));
            }
            let sn = sigma::sigma_subnormal_reach(s, g)?;
            first_failure(
                &l,
                |i| sn[i].contains(top),
                |i| sigma::is_sigma_permutable_in(s, g, &l, i, top),
            )
        }
        Property::QsigmaT => {
            let sn = sigma::sigma_subnormal_reach(s, g)?;
            first_failure(
                &l,
                |i| sn[i].contains(top),
                |i| modular_with(g, &l, i, top, st.modular),
            )
        }
        Property::TSigma => {
            let sn = sigma::sigma_subnormal_reach(s, g)?;
            first_failure(&l, |i| sn[i].contains(top), |i| l.is_normal(i))
        }
        Property::MsigmaT => {
            let sn = sigma::sigma_subnormal_reach(s, g)?;
            let reach = match st.modular {
                ModularStrategy::Reduced => modularity::sigma_subquasinormal_reach(s, g)?,
                ModularStrategy::Direct => Arc::new(chain_reach(&l, |k, h| {
                    sn[k].contains(h) && modular_with(g, &l, k, h, st.modular)
                })),
            };
            first_failure(
                &l,
                |i| reach[i].contains(top),
                |i| sn[i].contains(top) && modular_with(g, &l, i, top, st.modular),
            )
        }
        Property::MT => {
            let reach = match st.modular {
                ModularStrategy::Reduced => modularity::submodular_reach(g)?,
                ModularStrategy::Direct => Arc::new(chain_reach(&l, |k, h| {
                    modular_with(g, &l, k, h, st.modular)
                })),
            };
            first_failure(
                &l,
                |i| reach[i].contains(top),
                |i| modular_with(g, &l, i, top, st.modular),
            )
        }
    };
    Ok(Verdict::from_witness(&l, w))
}

/// Decide `p` as literal transitivity of its embedding relation: whenever
/// `H rel K` and `K rel G` then `H rel G`. `None` for the two classes that are
/// not transitivity statements (QσT, T_σ).
pub fn classify_transitive(
    g: &Group,
    s: &SigmaPartition,
    p: Property,
    st: &Strategies,
) -> Result<Option<Verdict>> {
    let l = g.lattice()?;
    let top = l.top();
    let s1 = SigmaPartition::sigma1();
    let sn = match p {
        Property::MsigmaT => Some(sigma::sigma_subnormal_reach(s, g)?),
        _ => None,
    };
    if p == Property::PsigmaT && !sigma::is_sigma_full_in(s, &l, top) {
        return Ok(Some(Verdict::undefined(NOT_SIGMA_FULL)));
    }
    let rel = |a: usize, k: usize| -> bool {
        match p {
            Property::T => l.is_normal_in(g, a, k),
            Property::PT => modularity::quasinormal_in(&l, a, k, st.quasinormal).is_ok(),
            Property::PST => sigma::is_sigma_permutable_in(&s1, g, &l, a, k),
            Property::PsigmaT => sigma::is_sigma_permutable_in(s, g, &l, a, k),
            Property::MsigmaT => {
                sn.as_ref().expect("computed")[a].contains(k)
                    && modular_with(g, &l, a, k, st.modular)
            }
            Property::MT => modular_with(g, &l, a, k, st.modular),
            Property::QsigmaT | Property::TSigma => unreachable!(),
        }
    };
    if matches!(p, Property::QsigmaT | Property::TSigma) {
        return Ok(None);
    }
    let in_g: Vec<bool> = (0..l.len()).map(|i| rel(i, top)).collect();
    let w = (0..l.len()).find(|&h| {
        !in_g[h]
            && l.above(h)
                .ones()
                .any(|k| k != h && k != top && in_g[k] && rel(h, k))
    });
    Ok(Some(Verdict::from_witness(&l, w)))
}

/// A subgroup property `A ∈ τ(K)` evaluated inside lattice members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Functor {
    Normal,
    Modular,
    SigmaPermutable,
}

impl Functor {
    pub const ALL: [Functor; 3] = [Functor::Normal, Functor::Modular, Functor::SigmaPermutable];

    pub fn name(self) -> &'static str {
        match self {
            Functor::Normal => "normal",
            Functor::Modular => "modular",
            Functor::SigmaPermutable => "sigma-permutable",
        }
    }

    pub fn holds_in(self, s: &SigmaPartition, g: &Group, l: &Lattice, a: usize, k: usize) -> bool {
        match self {
            Functor::Normal => l.is_normal_in(g, a, k),
            Functor::Modular => modularity::is_modular_in(g, l, a, k),
            Functor::SigmaPermutable => sigma::is_sigma_permutable_in(s, g, l, a, k),
        }
    }

    pub fn holds(self, s: &SigmaPartition, g: &Group, a: &Subgroup) -> Result<bool> {
        let l = g.lattice()?;
        let i = l.index_of(a).ok_or(Error::NotContained)?;
        Ok(self.holds_in(s, g, &l, i, l.top()))
    }
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(D, Z(D); U_1, …, U_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobinsonComplex {
    pub d: Subgroup,
    pub z: Subgroup,
    pub u: Vec<Subgroup>,
}

impl RobinsonComplex {
    pub fn k(&self) -> usize {
        self.u.len()
    }
}

/// The first clause a candidate complex fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexFailure {
    Trivial,
    NotNormal,
    FactorNotSimple,
    FactorSigmaPrimary,
    NotDirectProduct,
    CenterNotInFrattini,
    CenterFactorNotCyclic,
}

impl fmt::Display for ComplexFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexFailure::Trivial => "D is trivial",
            ComplexFailure::NotNormal => "D is not normal",
            ComplexFailure::FactorNotSimple => "a factor U_j/Z(D) is not simple",
            ComplexFailure::FactorSigmaPrimary => "a factor U_j/Z(D) is sigma-primary",
            ComplexFailure::NotDirectProduct => "D/Z(D) is not the product of the factors",
            ComplexFailure::CenterNotInFrattini => {
                "Z(D) is not contained in the Frattini subgroup of D"
            }
            ComplexFailure::CenterFactorNotCyclic => "a chief factor below Z(D) is not cyclic",
        })
    }
}

/// `G/N`, or `G` itself when `N` is trivial.
enum Factor<'a> {
    Same(&'a Group),
    Quot(Arc<Quotient>),
}

impl Factor<'_> {
    fn group(&self) -> &Group {
        match self {
            Factor::Same(g) => g,
            Factor::Quot(q) => &q.group,
        }
    }

    fn image(&self, h: &Subgroup) -> Subgroup {
        match self {
            Factor::Same(_) => h.clone(),
            Factor::Quot(q) => q.image(h),
        }
    }

    fn preimage(&self, source: &Group, h: &Subgroup) -> Subgroup {
        match self {
            Factor::Same(_) => h.clone(),
            Factor::Quot(q) => q.preimage(source, h),
        }
    }
}

fn factor_group<'a>(g: &'a Group, n: &Subgroup) -> Result<Factor<'a>> {
    if n.is_trivial() {
        Ok(Factor::Same(g))
    } else {
        Ok(Factor::Quot(g.quotient(n)?))
    }
}

fn meet(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    g.subgroup_from_bits(a.bits() & b.bits())
}

/// Image of a subgroup of `h` (embedded by `embed`) back in `G`.
fn embed_back(g: &Group, embed: &[Elem], h: &Subgroup) -> Result<Subgroup> {
    let set: Vec<Elem> = h.elements().map(|j| embed[j as usize]).collect();
    g.subgroup_from_set(&set)
}

/// Frattini subgroup of the subgroup `d` of `G`.
fn frattini_of_subgroup(g: &Group, d: &Subgroup) -> Result<Subgroup> {
    if d.order() == g.order() {
        let l = g.lattice()?;
        return Ok(l.sub(l.frattini()).clone());
    }
    let (h, embed) = g.subgroup_as_group(d)?;
    let l = h.lattice()?;
    embed_back(g, &embed, l.sub(l.frattini()))
}

/// Robinson σ-complex with the given `D` (default: the σ-soluble residual).
pub fn robinson_complex(
    s: &SigmaPartition,
    g: &Group,
    d: Option<&Subgroup>,
) -> Result<std::result::Result<RobinsonComplex, ComplexFailure>> {
    let d = match d {
        Some(d) => d.clone(),
        None => formations::residual(FormationId::SigmaSoluble, s, g)?,
    };
    if d.is_trivial() {
        return Ok(Err(ComplexFailure::Trivial));
    }
    if !g.is_normal(&d) {
        return Ok(Err(ComplexFailure::NotNormal));
    }
    let z = meet(g, &d, &g.centralizer_of(&d));
    let q = factor_group(g, &z)?;
    let qg = q.group();
    let dq = q.image(&d);
    let factors: Vec<Subgroup> = qg
        .minimal_normal_subgroups()
        .into_iter()
        .filter(|m| m.is_subgroup_of(&dq))
        .collect();
    for m in &factors {
        let gens = m.gens();
        let abelian = gens
            .iter()
            .all(|&a| gens.iter().all(|&b| qg.mul(a, b) == qg.mul(b, a)));
        let simple = if abelian {
            util::is_prime(m.order() as u64)
        } else {
            qg.subgroup_as_group(m)?.0.normal_subgroups().len() == 2
        };
        if !simple {
            return Ok(Err(ComplexFailure::FactorNotSimple));
        }
        if s.is_primary_number(m.order() as u64) {
            return Ok(Err(ComplexFailure::FactorSigmaPrimary));
        }
    }
    let product: usize = factors.iter().map(|m| m.order()).product();
    let gens: Vec<Elem> = factors
        .iter()
        .flat_map(|m| m.gens().iter().copied())
        .collect();
    if product != dq.order() || qg.closure(&gens).order() != dq.order() {
        return Ok(Err(ComplexFailure::NotDirectProduct));
    }
    if !z.is_subgroup_of(&frattini_of_subgroup(g, &d)?) {
        return Ok(Err(ComplexFailure::CenterNotInFrattini));
    }
    if !formations::chief_factors_below(g, &z)?
        .iter()
        .all(|c| c.is_cyclic)
    {
        return Ok(Err(ComplexFailure::CenterFactorNotCyclic));
    }
    let u = factors
        .iter()
        .map(|m| g.canonical(&q.preimage(g, m)))
        .collect();
    Ok(Ok(RobinsonComplex { d, z, u }))
}

fn soluble_normals(g: &Group) -> Vec<Subgroup> {
    g.normal_subgroups()
        .iter()
        .filter(|n| formations::is_soluble_subgroup(g, n))
        .cloned()
        .collect()
}

fn in_set(pi: &[u64]) -> impl Fn(u64) -> bool + '_ {
    move |p| pi.contains(&p)
}

fn avoids(g: &Group, x: Elem, pi: &[u64]) -> bool {
    util::prime_divisors(g.element_order(x) as u64)
        .into_iter()
        .all(|p| !pi.contains(&p))
}

/// `N_π`: for every soluble normal `N`, the `π'`-elements of `G/N` induce
/// power automorphisms on `O_π(G/N)`.
pub fn condition_n(g: &Group, pi: &[u64]) -> Result<bool> {
    for n in soluble_normals(g) {
        let f = factor_group(g, &n)?;
        let q = f.group();
        let o = sigma::o_pi(q, in_set(pi));
        let xs: Vec<Elem> = (0..q.order() as Elem)
            .filter(|&x| avoids(q, x, pi))
            .collect();
        if !modularity::induces_power_automorphisms(q, &xs, &o)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `t_π`: for every soluble normal `N`, every subgroup of `O_π(G/N)` is normal
/// in `G/N`.
pub fn condition_t(g: &Group, pi: &[u64]) -> Result<bool> {
    for n in soluble_normals(g) {
        let f = factor_group(g, &n)?;
        let q = f.group();
        let o = sigma::o_pi(q, in_set(pi));
        if !modularity::induces_power_automorphisms(q, q.generators(), &o)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which Hall π-subgroups of `G/N` the modularity clause of `P_π` ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HallScope {
    #[default]
    Every,
    Some,
}

/// `P_π`: if `G` has a Hall π-subgroup then, for every soluble normal `N`,
/// every subgroup of `O_π(G/N)` is modular in the Hall π-subgroups of `G/N`.
pub fn condition_p(g: &Group, pi: &[u64], scope: HallScope) -> Result<bool> {
    let want = util::part(g.order() as u64, in_set(pi)) as usize;
    let l = g.lattice()?;
    if l.of_order(want).is_empty() {
        return Ok(true);
    }
    for n in soluble_normals(g) {
        let f = factor_group(g, &n)?;
        let q = f.group();
        let ql = q.lattice()?;
        let o = ql
            .index_of(&sigma::o_pi(q, in_set(pi)))
            .expect("normal subgroups are in the lattice");
        let halls = ql.of_order(util::part(q.order() as u64, in_set(pi)) as usize);
        let ok_in = |h: usize| {
            ql.below(o)
                .ones()
                .all(|x| modularity::is_modular_in(q, &ql, x, h))
        };
        let ok = match scope {
            HallScope::Every => halls.iter().all(|&h| ok_in(h)),
            HallScope::Some => halls.iter().any(|&h| ok_in(h)),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M_{p,q}` restricted to the types accepted by `types`.
fn condition_m_with(g: &Group, types: impl Fn(u64, u64) -> bool) -> Result<bool> {
    for n in soluble_normals(g) {
        let f = factor_group(g, &n)?;
        let q = f.group();
        let mut lattice: Option<(Arc<Lattice>, Arc<sigma::Reach>)> = None;
        for p in q.normal_subgroups().iter() {
            if p.is_trivial() || p.order() == q.order() && q.is_abelian() {
                continue;
            }
            let (h, _) = q.subgroup_as_group(p)?;
            let Some(shape) = modularity::detect_p_group_shape(&h) else {
                continue;
            };
            if !types(shape.p, shape.q) {
                continue;
            }
            if lattice.is_none() {
                lattice = Some((q.lattice()?, sigma::subnormal_reach(q)?));
            }
            let (ql, sub) = lattice.as_ref().expect("just set");
            let pi = ql.index_of(p).expect("normal subgroups are in the lattice");
            let bad = ql.below(pi).ones().any(|x| {
                !sub[x].contains(ql.top()) && !modularity::is_modular_in(q, ql, x, ql.top())
            });
            if bad {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `M_{p,q}`: for every soluble normal `N` and every normal P-subgroup of
/// type `(p, q)` of `G/N`, its non-subnormal subgroups are modular in `G/N`.
pub fn condition_m(g: &Group, p: u64, q: u64) -> Result<bool> {
    condition_m_with(g, |a, b| a == p && b == q)
}

/// Named outcome of a structural characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Checker {
    /// σ-soluble PσT: abelian Hall residual with σ-nilpotent complement.
    SolublePsigmaT,
    /// σ-soluble QσT: as above with a complement whose lattice is modular.
    SolubleQsigmaT,
    /// σ-soluble T_σ: as above with a Dedekind complement.
    SolubleTsigma,
    /// σ-soluble T_σ: T-group with Dedekind Hall σ_i-subgroups.
    DedekindHallTsigma,
    /// Soluble MσT: the modular-complement conditions.
    SolubleMsigmaT,
    /// Soluble MT: modular subgroup lattice.
    SolubleMT,
    /// PσT via a Robinson σ-complex over the σ-soluble residual.
    RobinsonPsigmaT,
    /// QσT via a Robinson σ-complex over the σ-soluble residual.
    RobinsonQsigmaT,
    /// PT via a Robinson complex over the soluble residual.
    RobinsonPT,
    /// MT via a Robinson complex over the soluble residual.
    RobinsonMT,
    /// T_σ via `t_{σ_i}` and simple non-σ-primary chief factors.
    ChiefTsigma,
}

impl Checker {
    pub const ALL: [Checker; 11] = [
        Checker::SolublePsigmaT,
        Checker::SolubleQsigmaT,
        Checker::SolubleTsigma,
        Checker::DedekindHallTsigma,
        Checker::SolubleMsigmaT,
        Checker::SolubleMT,
        Checker::RobinsonPsigmaT,
        Checker::RobinsonQsigmaT,
        Checker::RobinsonPT,
        Checker::RobinsonMT,
        Checker::ChiefTsigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Checker::SolublePsigmaT => "psigmat-soluble",
            Checker::SolubleQsigmaT => "qsigmat-soluble",
            Checker::SolubleTsigma => "tsigma-soluble",
            Checker::DedekindHallTsigma => "tsigma-dedekind-halls",
            Checker::SolubleMsigmaT => "msigmat-soluble",
            Checker::SolubleMT => "mt-soluble",
            Checker::RobinsonPsigmaT => "psigmat-robinson",
            Checker::RobinsonQsigmaT => "qsigmat-robinson",
            Checker::RobinsonPT => "pt-robinson",
            Checker::RobinsonMT => "mt-robinson",
            Checker::ChiefTsigma => "tsigma-chief",
        }
    }

    /// The class the characterization decides.
    pub fn property(self) -> Property {
        match self {
            Checker::SolublePsigmaT | Checker::RobinsonPsigmaT => Property::PsigmaT,
            Checker::SolubleQsigmaT | Checker::RobinsonQsigmaT => Property::QsigmaT,
            Checker::SolubleTsigma | Checker::DedekindHallTsigma | Checker::ChiefTsigma => {
                Property::TSigma
            }
            Checker::SolubleMsigmaT => Property::MsigmaT,
            Checker::SolubleMT | Checker::RobinsonMT => Property::MT,
            Checker::RobinsonPT => Property::PT,
        }
    }

    pub fn check(self, s: &SigmaPartition, g: &Group) -> Result<TheoremCheck> {
        match self {
            Checker::SolublePsigmaT => soluble_structure(s, g, self, None),
            Checker::SolubleQsigmaT => soluble_structure(s, g, self, Some(Functor::Modular)),
            Checker::SolubleTsigma => soluble_structure(s, g, self, Some(Functor::Normal)),
            Checker::SolubleMsigmaT => {
                if !g.is_soluble() {
                    return Err(Error::NotSoluble);
                }
                soluble_structure(s, g, self, Some(Functor::Modular))
            }
            Checker::DedekindHallTsigma => dedekind_halls(s, g),
            Checker::SolubleMT => soluble_mt(g),
            Checker::RobinsonPsigmaT
            | Checker::RobinsonQsigmaT
            | Checker::RobinsonPT
            | Checker::RobinsonMT => robinson_check(s, g, self),
            Checker::ChiefTsigma => chief_tsigma(s, g),
        }
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Checker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Checker::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Invalid(format!("unknown checker `{s}`")))
    }
}

/// Per-condition outcome of a characterization. When `hypothesis` is false
/// the characterization makes no claim about the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub checker: Checker,
    pub hypothesis: bool,
    pub conditions: BTreeMap<String, bool>,
    pub d: Option<Subgroup>,
    pub complement: Option<Subgroup>,
    pub complex: Option<RobinsonComplex>,
    pub complex_failure: Option<ComplexFailure>,
}

impl TheoremCheck {
    fn new(checker: Checker) -> Self {
        TheoremCheck {
            checker,
            hypothesis: true,
            conditions: BTreeMap::new(),
            d: None,
            complement: None,
            complex: None,
            complex_failure: None,
        }
    }

    fn set(&mut self, name: &str, value: bool) {
        self.conditions.insert(name.to_string(), value);
    }

    pub fn holds(&self) -> bool {
        self.conditions.values().all(|&v| v)
    }

    /// The class verdict the characterization implies, if it applies.
    pub fn verdict(&self) -> Option<bool> {
        self.hypothesis.then(|| self.holds())
    }

    pub fn condition(&self, name: &str) -> Option<bool> {
        self.conditions.get(name).copied()
    }
}

/// Cap errors inside a checker name the abandoned sub-check.
fn during<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::CapExceeded { what, cap } => Error::CapExceeded {
            what: format!("{stage}: {what}"),
            cap,
        },
        other => other,
    })
}

fn o_class_of_subgroup(
    s: &SigmaPartition,
    g: &Group,
    d: &Subgroup,
    c: SigmaClass,
) -> Result<Subgroup> {
    if d.order() == g.order() {
        return Ok(sigma::o_pi(g, |p| s.class_of(p) == c));
    }
    let (h, embed) = g.subgroup_as_group(d)?;
    let o = sigma::o_pi(&h, |p| s.class_of(p) == c);
    embed_back(g, &embed, &o)
}

/// The complement conditions shared by the σ-soluble characterizations: with
/// `D` the σ-nilpotent residual, `G = D ⋊ M` for an abelian Hall `D` of odd
/// order and σ-nilpotent `M` (whose subgroups all lie in `τ(M)` when a functor
/// is given), every element of `G` induces a power automorphism on `D`, and
/// `O_{σ_i}(D)` has a normal complement in a Hall `σ_i`-subgroup for all `i`.
pub fn soluble_structure(
    s: &SigmaPartition,
    g: &Group,
    checker: Checker,
    clause: Option<Functor>,
) -> Result<TheoremCheck> {
    if !sigma::is_sigma_soluble(s, g)? {
        return Err(Error::NotSigmaSoluble);
    }
    let l = g.lattice()?;
    let top = l.top();
    let d = formations::residual(FormationId::SigmaNilpotent, s, g)?;
    let n = g.order();
    let di = l.index_of(&d).expect("normal subgroups are in the lattice");
    let mut out = TheoremCheck::new(checker);

    let gens = d.gens();
    let abelian = gens
        .iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    out.set("d_abelian", abelian);
    out.set(
        "d_hall",
        util::prime_divisors(d.order() as u64)
            .into_iter()
            .all(|p| !((n / d.order()) as u64).is_multiple_of(p)),
    );
    out.set("d_odd_order", d.order() % 2 == 1);

    let mut complement = None;
    for m in l.of_order(n / d.order()) {
        if l.meet(m, di) != 0 {
            continue;
        }
        let (h, _) = g.subgroup_as_group(l.sub(m))?;
        if !sigma::is_sigma_nilpotent(s, &h) {
            continue;
        }
        let tau_ok = match clause {
            None => true,
            Some(Functor::Modular) => modularity::is_m_group_in(g, &l, m),
            Some(Functor::Normal) => modularity::is_dedekind_in(g, &l, m),
            Some(tau) => l.below(m).ones().all(|u| tau.holds_in(s, g, &l, u, m)),
        };
        if tau_ok {
            complement = Some(l.sub(m).clone());
            break;
        }
    }
    out.set("complement", complement.is_some());
    out.complement = complement;

    out.set(
        "power_automorphisms",
        modularity::induces_power_automorphisms(g, g.generators(), &d)?,
    );

    let mut normal_complements = true;
    for c in s.classes_of_group(g) {
        let o = o_class_of_subgroup(s, g, &d, c)?;
        let oi = l.index_of(&o).expect("subgroups are in the lattice");
        let found = sigma::hall_subgroups_in(s, &l, top, c)
            .into_iter()
            .any(|h| {
                l.le(oi, h)
                    && l.below(h).ones().any(|k| {
                        l.sub(k).order() * o.order() == l.sub(h).order()
                            && l.meet(k, oi) == 0
                            && l.is_normal_in(g, k, h)
                    })
            });
        normal_complements &= found;
    }
    out.set("normal_complements", normal_complements);
    out.d = Some(d);
    Ok(out)
}

/// Premise "every σ-subnormal subgroup lies in `τ(G)`" alongside the
/// complement conditions with the functor clause on `M`.
pub fn functor_check(s: &SigmaPartition, g: &Group, tau: Functor) -> Result<(bool, TheoremCheck)> {
    let l = g.lattice()?;
    let top = l.top();
    let sn = sigma::sigma_subnormal_reach(s, g)?;
    let premise = (0..l.len())
        .filter(|&i| sn[i].contains(top))
        .all(|i| tau.holds_in(s, g, &l, i, top));
    let checker = match tau {
        Functor::Normal => Checker::SolubleTsigma,
        Functor::Modular => Checker::SolubleQsigmaT,
        Functor::SigmaPermutable => Checker::SolublePsigmaT,
    };
    let check = soluble_structure(s, g, checker, Some(tau))?;
    Ok((premise, check))
}

fn dedekind_halls(s: &SigmaPartition, g: &Group) -> Result<TheoremCheck> {
    if !sigma::is_sigma_soluble(s, g)? {
        return Err(Error::NotSigmaSoluble);
    }
    let l = g.lattice()?;
    let mut out = TheoremCheck::new(Checker::DedekindHallTsigma);
    let t = classify(g, s, Property::T, &Strategies::default())?;
    out.set("t_group", t.value == Some(true));
    let halls_dedekind = s.classes_of_group(g).into_iter().all(|c| {
        sigma::hall_subgroups_in(s, &l, l.top(), c)
            .into_iter()
            .all(|h| modularity::is_dedekind_in(g, &l, h))
    });
    out.set("halls_dedekind", halls_dedekind);
    Ok(out)
}

fn soluble_mt(g: &Group) -> Result<TheoremCheck> {
    if !g.is_soluble() {
        return Err(Error::NotSoluble);
    }
    let mut out = TheoremCheck::new(Checker::SolubleMT);
    out.set("m_group", modularity::is_m_group(g)?);
    Ok(out)
}

fn primes_of_class(s: &SigmaPartition, g: &Group, c: SigmaClass) -> Vec<u64> {
    util::prime_divisors(g.order() as u64)
        .into_iter()
        .filter(|&p| s.class_of(p) == c)
        .collect()
}

fn chief_tsigma(s: &SigmaPartition, g: &Group) -> Result<TheoremCheck> {
    let mut out = TheoremCheck::new(Checker::ChiefTsigma);
    out.hypothesis = sigma::is_sigma_full(s, g)?;
    let mut t_ok = true;
    for c in s.classes_of_group(g) {
        t_ok &= condition_t(g, &primes_of_class(s, g, c))?;
    }
    out.set("t_conditions", t_ok);
    let simple = formations::chief_series(g)?
        .factors()
        .iter()
        .all(|f| f.is_sigma_primary(s) || f.is_simple);
    out.set("chief_factors_simple", simple);
    Ok(out)
}

/// Normal subgroups `U'_{j_1} ⋯ U'_{j_r}` for all index sets with `1 ≤ r < k`.
fn derived_products(g: &Group, c: &RobinsonComplex) -> Vec<Subgroup> {
    let k = c.k();
    let derived: Vec<Subgroup> = c.u.iter().map(|u| g.derived_subgroup(u)).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << k) - 1 {
        let gens: Vec<Elem> = (0..k)
            .filter(|j| mask >> j & 1 == 1)
            .flat_map(|j| derived[j].gens().iter().copied())
            .collect();
        out.push(g.closure(&gens));
    }
    out
}

/// `check` on `G` and on every `G/U'_{j_1}⋯U'_{j_r}`.
fn over_complex_quotients(
    g: &Group,
    complex: Option<&RobinsonComplex>,
    check: impl Fn(&Group) -> Result<bool>,
) -> Result<bool> {
    if !check(g)? {
        return Ok(false);
    }
    if let Some(c) = complex {
        for n in derived_products(g, c) {
            let f = factor_group(g, &n)?;
            if !check(f.group())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn halls_supersoluble_or_pst(s: &SigmaPartition, g: &Group) -> Result<bool> {
    let l = g.lattice()?;
    let s1 = SigmaPartition::sigma1();
    for c in s.classes_of_group(g) {
        for h in sigma::hall_subgroups_in(s, &l, l.top(), c) {
            let (hg, _) = g.subgroup_as_group(l.sub(h))?;
            let ok = formations::is_member(FormationId::Supersoluble, &s1, &hg)?
                || classify(&hg, &s1, Property::PST, &Strategies::default())?.value == Some(true);
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn robinson_check(s: &SigmaPartition, g: &Group, checker: Checker) -> Result<TheoremCheck> {
    let s1 = SigmaPartition::sigma1();
    let mut out = TheoremCheck::new(checker);
    let (sig, d) = match checker {
        Checker::RobinsonPsigmaT | Checker::RobinsonQsigmaT => {
            let full = during("sigma-fullness", sigma::is_sigma_full(s, g))?;
            out.hypothesis = full;
            if checker == Checker::RobinsonPsigmaT && full {
                out.hypothesis = during("hall hypothesis", halls_supersoluble_or_pst(s, g))?;
            }
            if !out.hypothesis {
                return Ok(out);
            }
            (s, formations::residual(FormationId::SigmaSoluble, s, g)?)
        }
        _ => (&s1, formations::residual(FormationId::Soluble, &s1, g)?),
    };

    let quotient = factor_group(g, &d)?;
    let qg = quotient.group();
    let upper = match checker {
        Checker::RobinsonPsigmaT => during(
            "quotient",
            soluble_structure(sig, qg, Checker::SolublePsigmaT, None),
        )?
        .holds(),
        Checker::RobinsonQsigmaT | Checker::RobinsonPT => during(
            "quotient",
            soluble_structure(sig, qg, Checker::SolubleQsigmaT, Some(Functor::Modular)),
        )?
        .holds(),
        _ => during("quotient", modularity::is_m_group(qg))?,
    };
    out.set("quotient", upper);

    let complex = if d.is_trivial() {
        out.set("robinson_complex", true);
        None
    } else {
        match during("robinson complex", robinson_complex(sig, g, Some(&d)))? {
            Ok(c) => {
                out.set("robinson_complex", true);
                Some(c)
            }
            Err(f) => {
                out.set("robinson_complex", false);
                out.complex_failure = Some(f);
                None
            }
        }
    };

    let z_order = complex.as_ref().map_or(1, |c| c.z.order()) as u64;
    let n_sets: Vec<Vec<u64>> = sig
        .classes_of(z_order)
        .into_iter()
        .map(|c| primes_of_class(sig, g, c))
        .collect();
    let d_sets: Vec<Vec<u64>> = sig
        .classes_of(d.order() as u64)
        .into_iter()
        .map(|c| primes_of_class(sig, g, c))
        .collect();

    let n_ok = during(
        "N conditions",
        over_complex_quotients(g, complex.as_ref(), |q| {
            for pi in &n_sets {
                if !condition_n(q, pi)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    )?;
    out.set("n_conditions", n_ok);

    if checker != Checker::RobinsonPsigmaT {
        let p_ok = during(
            "P conditions",
            over_complex_quotients(g, complex.as_ref(), |q| {
                for pi in &d_sets {
                    if !condition_p(q, pi, HallScope::Every)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }),
        )?;
        out.set("p_conditions", p_ok);
    }

    if checker == Checker::RobinsonMT {
        let pd = util::prime_divisors(d.order() as u64);
        let m_ok = during(
            "M conditions",
            over_complex_quotients(g, complex.as_ref(), |q| {
                condition_m_with(q, |p, r| pd.contains(&p) || pd.contains(&r))
            }),
        )?;
        out.set("m_conditions", m_ok);
    }

    out.d = Some(d);
    out.complex = complex;
    Ok(out)
}

/// Structural facts that hold for every σ-quasinormal subgroup `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasinormalAudit {
    /// `A` permutes with every Hall `σ_i`-subgroup of `G`.
    pub permutes_with_halls: bool,
    /// `A^G/A_G` is σ-nilpotent.
    pub section_sigma_nilpotent: bool,
    /// `G/C_G(A^G/A_G)` is σ-nilpotent.
    pub action_sigma_nilpotent: bool,
    /// Every chief factor of `G` between `A_G` and `A^G` is σ-central.
    pub chief_factors_central: bool,
    /// `σ(G/C_G(A^G/A_G)) ⊆ σ(A^G/A_G)`.
    pub action_classes_contained: bool,
    /// `A` is σ-seminormal.
    pub sigma_seminormal: bool,
}

impl QuasinormalAudit {
    pub fn all(&self) -> bool {
        self.permutes_with_halls
            && self.section_sigma_nilpotent
            && self.action_sigma_nilpotent
            && self.chief_factors_central
            && self.action_classes_contained
            && self.sigma_seminormal
    }
}

pub fn audit_sigma_quasinormal(
    s: &SigmaPartition,
    g: &Group,
    a: &Subgroup,
) -> Result<QuasinormalAudit> {
    let l = g.lattice()?;
    let ai = l.index_of(a).ok_or(Error::NotContained)?;
    let permutes_with_halls = s.classes_of_group(g).into_iter().all(|c| {
        sigma::hall_subgroups_in(s, &l, l.top(), c)
            .into_iter()
            .all(|h| crate::lattice::permutes(&l, ai, h))
    });
    let core = g.core(a);
    let closure = g.normal_closure(a);
    let section = formations::section(g, &core, &closure)?;
    let c = formations::centralizer_of_section(g, &core, &closure);
    let action = factor_group(g, &c)?;
    let mut chief_factors_central = true;
    for f in formations::chief_series_between(g, &core, &closure, None)? {
        chief_factors_central &= formations::is_sigma_central(s, g, &f.lower, &f.upper)?;
    }
    let section_classes = s.classes_of(section.order() as u64);
    Ok(QuasinormalAudit {
        permutes_with_halls,
        section_sigma_nilpotent: sigma::is_sigma_nilpotent(s, &section),
        action_sigma_nilpotent: sigma::is_sigma_nilpotent(s, action.group()),
        chief_factors_central,
        action_classes_contained: s
            .classes_of((g.order() / c.order()) as u64)
            .is_subset(&section_classes),
        sigma_seminormal: sigma::is_sigma_seminormal(s, g, a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn c7c3() -> Group {
        let c7 = cyclic(7).unwrap();
        semidirect_product(&c7, &cyclic(3).unwrap(), &[power_action(&c7, 2)]).unwrap()
    }

    fn run(g: &Group, s: &SigmaPartition, p: Property) -> Verdict {
        classify(g, s, p, &Strategies::default()).unwrap()
    }

    #[test]
    fn small_examples() {
        let s1 = SigmaPartition::sigma1();
        let s3 = symmetric(3).unwrap();
        assert_eq!(run(&s3, &s1, Property::T).value, Some(true));
        assert_eq!(run(&s3, &s1, Property::MT).value, Some(true));

        let a4 = alternating(4).unwrap();
        let v = run(&a4, &s1, Property::PST);
        assert_eq!(v.value, Some(false));
        assert_eq!(v.witness.unwrap().order(), 2);

        let g = c7c3();
        assert_eq!(run(&g, &s1, Property::PsigmaT).value, Some(true));
        let s = SigmaPartition::parse("classes=[[3,7]];rest=singletons").unwrap();
        assert_eq!(run(&g, &s, Property::QsigmaT).value, Some(true));

        let s4 = symmetric(4).unwrap();
        assert_eq!(run(&s4, &s1, Property::PsigmaT).value, Some(false));

        let d8 = dihedral(8).unwrap();
        let v = run(&d8, &s1, Property::MT);
        assert_eq!(v.value, Some(false));
        assert_eq!(v.witness.unwrap().order(), 2);
        assert_eq!(
            run(&quaternion8().unwrap(), &s1, Property::MT).value,
            Some(true)
        );
    }

    #[test]
    fn a5_with_one_big_class() {
        let a5 = alternating(5).unwrap();
        let s = SigmaPartition::parse("classes=[[2,3,5]];rest=singletons").unwrap();
        assert_eq!(
            run(&a5, &SigmaPartition::sigma1(), Property::PT).value,
            Some(true)
        );
        let v = run(&a5, &s, Property::QsigmaT);
        assert_eq!(v.value, Some(false));
        assert_eq!(v.witness.unwrap().order(), 2);
        assert_eq!(run(&a5, &s, Property::PsigmaT).value, Some(true));
    }

    #[test]
    fn non_full_group_is_flagged() {
        let a5 = alternating(5).unwrap();
        let s = SigmaPartition::pi(&[2, 5]).unwrap();
        let v = run(&a5, &s, Property::PsigmaT);
        assert_eq!(v.value, None);
        assert_eq!(v.flags, vec![NOT_SIGMA_FULL.to_string()]);
    }

    #[test]
    fn soluble_structure_examples() {
        let s1 = SigmaPartition::sigma1();
        let c = Checker::SolublePsigmaT.check(&s1, &c7c3()).unwrap();
        assert!(c.holds());
        assert_eq!(c.d.unwrap().order(), 7);
        assert_eq!(c.complement.unwrap().order(), 3);
        let c = Checker::SolublePsigmaT
            .check(&s1, &symmetric(4).unwrap())
            .unwrap();
        assert_eq!(c.condition("d_abelian"), Some(false));
        let c = Checker::SolublePsigmaT
            .check(&s1, &sl2(3).unwrap())
            .unwrap();
        assert_eq!(c.d.as_ref().unwrap().order(), 8);
        assert_eq!(c.condition("d_abelian"), Some(false));
        assert_eq!(
            Checker::SolublePsigmaT.check(&s1, &alternating(5).unwrap()),
            Err(Error::NotSigmaSoluble)
        );
    }

    #[test]
    fn functor_instances_on_s3() {
        let s3 = symmetric(3).unwrap();
        let (premise, check) =
            functor_check(&SigmaPartition::sigma1(), &s3, Functor::Normal).unwrap();
        assert!(premise && check.holds());
        let s = SigmaPartition::parse("classes=[[2,3]];rest=singletons").unwrap();
        let (premise, check) = functor_check(&s, &s3, Functor::Normal).unwrap();
        assert!(!premise && !check.holds());
        let s = SigmaPartition::parse("classes=[[3,7]];rest=singletons").unwrap();
        let (premise, check) = functor_check(&s, &c7c3(), Functor::Modular).unwrap();
        assert!(premise && check.holds());
    }

    #[test]
    fn conditions() {
        let a4 = alternating(4).unwrap();
        assert!(!condition_n(&a4, &[2]).unwrap());
        let s3 = symmetric(3).unwrap();
        assert!(condition_t(&s3, &[3]).unwrap());
        assert!(condition_t(&s3, &[2]).unwrap());
        assert!(!condition_t(&symmetric(4).unwrap(), &[2]).unwrap());
        assert!(condition_m(&s3, 3, 2).unwrap());
    }

    #[test]
    fn robinson_complexes() {
        let s1 = SigmaPartition::sigma1();
        let a5 = alternating(5).unwrap();
        let c = robinson_complex(&s1, &a5, None).unwrap().unwrap();
        assert_eq!((c.d.order(), c.z.order(), c.k()), (60, 1, 1));
        let s3 = symmetric(3).unwrap();
        assert_eq!(
            robinson_complex(&s1, &s3, None).unwrap(),
            Err(ComplexFailure::Trivial)
        );
        let s5 = symmetric(5).unwrap();
        let c = robinson_complex(&s1, &s5, None).unwrap().unwrap();
        assert_eq!(c.d.order(), 60);
    }

    #[test]
    fn tsigma_checkers_on_s3() {
        let s1 = SigmaPartition::sigma1();
        let s3 = symmetric(3).unwrap();
        let c = Checker::ChiefTsigma.check(&s1, &s3).unwrap();
        assert_eq!(c.verdict(), Some(true));
        let c = Checker::DedekindHallTsigma.check(&s1, &s3).unwrap();
        assert_eq!(c.verdict(), Some(true));
    }

    #[test]
    fn transitive_forms_on_small_groups() {
        let s1 = SigmaPartition::sigma1();
        let st = Strategies::oracle();
        for g in [
            symmetric(3).unwrap(),
            dihedral(8).unwrap(),
            alternating(4).unwrap(),
        ] {
            for p in [Property::T, Property::PT, Property::PST, Property::MT] {
                let a = classify(&g, &s1, p, &Strategies::default()).unwrap().value;
                let b = classify_transitive(&g, &s1, p, &st).unwrap().unwrap().value;
                assert_eq!(a, b, "{p}");
            }
        }
    }
}
