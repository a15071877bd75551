//! Permutation groups with a fully materialized element set.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::formations::ChiefSeries;
use crate::lattice::Lattice;
use crate::perm::Permutation;
use crate::sigma::Reach;
use crate::subgroup::Subgroup;

/// Index of an element in [`Group::elements`].
pub type Elem = u32;

/// Groups at or below this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// Hard limits on how far the engine is willing to go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub element_cap: usize,
    /// Largest group order for which the full subgroup lattice is built.
    pub lattice_order_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            element_cap: 100_000,
            lattice_order_cap: 2_000,
            subgroup_cap: 100_000,
        }
    }
}

#[derive(Default)]
pub(crate) struct Caches {
    pub lattice: OnceLock<Result<Arc<Lattice>>>,
    pub normals: OnceLock<Arc<Vec<Subgroup>>>,
    pub classes: OnceLock<Arc<Vec<Vec<Elem>>>>,
    pub chief: OnceLock<Arc<ChiefSeries>>,
    pub quotients: Mutex<HashMap<FixedBitSet, Arc<Quotient>>>,
    pub reach: Mutex<HashMap<String, Arc<Reach>>>,
    pub membership: Mutex<HashMap<String, bool>>,
}

pub struct Group {
    degree: usize,
    generators: Vec<Elem>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    table: Option<Vec<Elem>>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    limits: Limits,
    pub(crate) caches: Caches,
}

/// A homomorphism given by its image table on element indices.
#[derive(Clone)]
pub struct GroupHom {
    pub target: Arc<Group>,
    pub map: Vec<Elem>,
}

impl GroupHom {
    /// Exhaustive check of `map(xy) = map(x)map(y)`.
    pub fn is_homomorphism(&self, source: &Group) -> bool {
        let n = source.order() as Elem;
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.map[source.mul(x, y) as usize]
                    == self.target.mul(self.map[x as usize], self.map[y as usize])
            })
        })
    }

    pub fn kernel(&self, source: &Group) -> Subgroup {
        let ids: Vec<Elem> = (0..source.order() as Elem)
            .filter(|&x| self.map[x as usize] == 0)
            .collect();
        source.closure(&ids)
    }

    /// Image of a subgroup of the source.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.gens().iter().map(|&x| self.map[x as usize]).collect();
        self.target.closure(&gens)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, source: &Group, h: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(source.order());
        for (x, &y) in self.map.iter().enumerate() {
            if h.contains(y) {
                bits.insert(x);
            }
        }
        source.subgroup_from_bits(bits)
    }
}

/// `G/N` as a permutation group on the right cosets of `N`.
pub struct Quotient {
    pub group: Arc<Group>,
    pub hom: GroupHom,
}

impl Group {
    /// Closure of `generators` under composition.
    pub fn generate(degree: usize, generators: &[Permutation], limits: Limits) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {}, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }

        // BFS over the Cayley graph, remembering how each element was reached
        let id = Permutation::identity(degree);
        let mut found: HashMap<Permutation, usize> = HashMap::new();
        let mut list: Vec<Permutation> = vec![id.clone()];
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        found.insert(id, 0);
        let mut head = 0;
        while head < list.len() {
            for (s, gen) in gens.iter().enumerate() {
                let y = list[head].then(gen);
                if !found.contains_key(&y) {
                    if list.len() >= limits.element_cap {
                        return Err(Error::cap("group order", limits.element_cap));
                    }
                    found.insert(y.clone(), list.len());
                    list.push(y);
                    parent.push((head, s));
                }
            }
            head += 1;
        }

        let n = list.len();
        let mut perm_order: Vec<usize> = (0..n).collect();
        perm_order.sort_by(|&a, &b| list[a].cmp(&list[b]));
        let mut rank = vec![0usize; n];
        for (r, &i) in perm_order.iter().enumerate() {
            rank[i] = r;
        }
        let elements: Vec<Permutation> = perm_order.iter().map(|&i| list[i].clone()).collect();
        drop(list);
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();

        let right_gen: Vec<Vec<Elem>> = gens
            .iter()
            .map(|s| elements.iter().map(|x| index[&x.then(s)]).collect())
            .collect();

        let table = if n <= TABLE_LIMIT {
            // x·y = (x·y')·s where y = y'·s is y's BFS parent
            // BFS order guarantees the parent row is filled first
            let mut t = vec![0 as Elem; n * n];
            for orig_y in 0..n {
                let y = rank[orig_y];
                let (p, s) = parent[orig_y];
                if s == usize::MAX {
                    for x in 0..n {
                        t[x * n + y] = x as Elem;
                    }
                } else {
                    let yp = rank[p];
                    for x in 0..n {
                        let xy = t[x * n + yp];
                        t[x * n + y] = right_gen[s][xy as usize];
                    }
                }
            }
            Some(t)
        } else {
            None
        };

        let inv: Vec<Elem> = elements.iter().map(|x| index[&x.inverse()]).collect();
        let orders: Vec<u32> = elements.iter().map(|x| x.order() as u32).collect();
        let generators: Vec<Elem> = gens.iter().map(|g| index[g]).collect();

        Ok(Group {
            degree,
            generators,
            elements,
            index,
            table,
            inv,
            orders,
            limits,
            caches: Caches::default(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, x: Elem) -> &Permutation {
        &self.elements[x as usize]
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x as usize * self.elements.len() + y as usize],
            None => self.index[&self.elements[x as usize].then(&self.elements[y as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x as usize]
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut result = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn element_order(&self, x: Elem) -> usize {
        self.orders[x as usize] as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &o| crate::perm::lcm(acc, o as usize))
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert_range(..);
        Subgroup::from_parts(bits, self.generators.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        Subgroup::from_parts(bits, Vec::new())
    }

    /// The subgroup generated by `seed`.
    pub fn closure(&self, seed: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = dedup_gens(seed);
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut list = vec![0 as Elem];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.put(y as usize) {
                    list.push(y);
                }
            }
            head += 1;
        }
        Subgroup::from_parts(bits, gens)
    }

    /// `⟨h, extra⟩`, reusing the elements of `h`.
    pub fn closure_with(&self, h: &Subgroup, extra: &[Elem]) -> Subgroup {
        let extra: Vec<Elem> = extra.iter().copied().filter(|&x| !h.contains(x)).collect();
        if extra.is_empty() {
            return h.clone();
        }
        let mut gens: Vec<Elem> = h.gens().to_vec();
        gens.extend(extra.iter().copied());
        let gens = dedup_gens(&gens);
        let mut bits = h.bits().clone();
        let mut list: Vec<Elem> = h.elements().collect();
        // new elements only arise from multiplying by generators
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.put(y as usize) {
                    list.push(y);
                }
            }
            head += 1;
        }
        Subgroup::from_parts(bits, gens)
    }

    /// Builds a subgroup from an element set known to be a subgroup.
    pub fn subgroup_from_bits(&self, bits: FixedBitSet) -> Subgroup {
        let gens = self.greedy_gens(&bits);
        Subgroup::from_parts(bits, gens)
    }

    /// Checks closure of an arbitrary element set and returns it as a subgroup.
    pub fn subgroup_from_set(&self, set: &[Elem]) -> Result<Subgroup> {
        let h = self.closure(set);
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        for &x in set {
            bits.insert(x as usize);
        }
        if bits != *h.bits() {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(self.canonical(&h))
    }

    /// Deterministic generating set depending only on the element set:
    /// scan elements in index order and keep each one not yet generated.
    pub fn greedy_gens(&self, bits: &FixedBitSet) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        let total = bits.count_ones(..);
        if total == 1 {
            return gens;
        }
        // prefer elements of large order so that cyclic groups get one generator
        let mut cand: Vec<Elem> = bits.ones().map(|i| i as Elem).collect();
        cand.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in cand {
            if cur.order() == total {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure_with(&cur, &[x]);
            }
        }
        gens
    }

    /// Replaces a subgroup's generating set by [`Group::greedy_gens`].
    pub fn canonical(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_parts(h.bits().clone(), self.greedy_gens(h.bits()))
    }

    pub fn cyclic(&self, x: Elem) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        let mut y = 0;
        loop {
            bits.insert(y as usize);
            y = self.mul(y, x);
            if y == 0 {
                break;
            }
        }
        let gens = if x == 0 { Vec::new() } else { vec![x] };
        Subgroup::from_parts(bits, gens)
    }

    pub fn conjugate(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for x in h.elements() {
            bits.insert(self.conj(x, g) as usize);
        }
        let gens = h.gens().iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_parts(bits, gens)
    }

    /// Whether every generator of `by` normalizes `a`.
    pub fn normalizes(&self, by: &[Elem], a: &Subgroup) -> bool {
        by.iter()
            .all(|&g| a.gens().iter().all(|&x| a.contains(self.conj(x, g))))
    }

    /// `a ⊴ b`; errors if `a` is not inside `b`.
    pub fn is_normal_in(&self, a: &Subgroup, b: &Subgroup) -> Result<bool> {
        if !a.is_subgroup_of(b) {
            return Err(Error::NotContained);
        }
        Ok(self.normalizes(b.gens(), a))
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        self.normalizes(&self.generators, a)
    }

    /// Largest subgroup of `a` normal in `b`.
    pub fn core_in(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        if !a.is_subgroup_of(b) {
            return Err(Error::NotContained);
        }
        Ok(self.core_by(a, b.gens()))
    }

    pub fn core(&self, a: &Subgroup) -> Subgroup {
        self.core_by(a, &self.generators)
    }

    fn core_by(&self, a: &Subgroup, gens: &[Elem]) -> Subgroup {
        let mut bits = a.bits().clone();
        loop {
            let mut changed = false;
            for &g in gens {
                let mut next = FixedBitSet::with_capacity(self.order());
                for x in bits.ones() {
                    let y = self.conj(x as Elem, self.inv(g));
                    // x ∈ C^g iff x^{g⁻¹} ∈ C
                    if bits.contains(y as usize) {
                        next.insert(x);
                    }
                }
                if next.count_ones(..) != bits.count_ones(..) {
                    bits = next;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.subgroup_from_bits(bits)
    }

    /// `⟨a^g : g ∈ b⟩` for `a ≤ b`.
    pub fn normal_closure_in(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        if !a.is_subgroup_of(b) {
            return Err(Error::NotContained);
        }
        Ok(self.normal_closure_by(a, b.gens()))
    }

    pub fn normal_closure(&self, a: &Subgroup) -> Subgroup {
        self.normal_closure_by(a, &self.generators)
    }

    fn normal_closure_by(&self, a: &Subgroup, gens: &[Elem]) -> Subgroup {
        let mut cur = a.clone();
        loop {
            let mut extra = Vec::new();
            for &g in gens {
                for &x in cur.gens() {
                    let y = self.conj(x, g);
                    if !cur.contains(y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return cur;
            }
            cur = self.closure_with(&cur, &extra);
        }
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&self.generators)
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[Elem]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for x in 0..self.order() as Elem {
            if set.iter().all(|&s| self.mul(x, s) == self.mul(s, x)) {
                bits.insert(x as usize);
            }
        }
        self.subgroup_from_bits(bits)
    }

    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(h.gens())
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() as Elem {
            if self.normalizes(&[g], h) {
                bits.insert(g as usize);
            }
        }
        self.subgroup_from_bits(bits)
    }

    /// `[a, b]`, the subgroup generated by all commutators.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(self.order());
        for x in a.elements() {
            for y in b.elements() {
                let c = self.commutator(x, y);
                if !seen.put(c as usize) {
                    comms.push(c);
                }
            }
        }
        let h = self.closure(&comms);
        self.canonical(&h)
    }

    pub fn derived_subgroup(&self, a: &Subgroup) -> Subgroup {
        self.commutator_subgroup(a, a)
    }

    pub fn is_soluble(&self) -> bool {
        let mut cur = self.whole();
        loop {
            if cur.is_trivial() {
                return true;
            }
            let next = self.derived_subgroup(&cur);
            if next.order() == cur.order() {
                return false;
            }
            cur = next;
        }
    }

    /// Conjugacy classes, ordered by least element; each class sorted.
    pub fn conjugacy_classes(&self) -> Arc<Vec<Vec<Elem>>> {
        self.caches
            .classes
            .get_or_init(|| {
                let n = self.order();
                let mut seen = FixedBitSet::with_capacity(n);
                let mut classes = Vec::new();
                for x in 0..n as Elem {
                    if seen.contains(x as usize) {
                        continue;
                    }
                    seen.insert(x as usize);
                    let mut class = vec![x];
                    let mut head = 0;
                    while head < class.len() {
                        let y = class[head];
                        for &g in &self.generators {
                            let z = self.conj(y, g);
                            if !seen.put(z as usize) {
                                class.push(z);
                            }
                        }
                        head += 1;
                    }
                    class.sort_unstable();
                    classes.push(class);
                }
                Arc::new(classes)
            })
            .clone()
    }

    /// The subgroup `h` as a group in its own right. Element `j` of the new
    /// group is the `j`-th element of `h` in index order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<(Group, Vec<Elem>)> {
        let gens: Vec<Permutation> = h.gens().iter().map(|&x| self.element(x).clone()).collect();
        let sub = Group::generate(self.degree, &gens, self.limits)?;
        let embed: Vec<Elem> = h.elements().collect();
        debug_assert_eq!(sub.order(), embed.len());
        Ok((sub, embed))
    }

    /// `G/N`, cached per normal subgroup.
    pub fn quotient(&self, n: &Subgroup) -> Result<Arc<Quotient>> {
        if let Some(q) = self.caches.quotients.lock().unwrap().get(n.bits()) {
            return Ok(q.clone());
        }
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let q = Arc::new(self.build_quotient(n)?);
        self.caches
            .quotients
            .lock()
            .unwrap()
            .insert(n.bits().clone(), q.clone());
        Ok(q)
    }

    fn build_quotient(&self, n: &Subgroup) -> Result<Quotient> {
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps: Vec<Elem> = Vec::new();
        for x in 0..order as Elem {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for m in n.elements() {
                coset_of[self.mul(m, x) as usize] = c;
            }
        }
        let index = reps.len();
        let action = |g: Elem| -> Permutation {
            let images = reps
                .iter()
                .map(|&r| coset_of[self.mul(r, g) as usize])
                .collect();
            Permutation::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Permutation> = self.generators.iter().map(|&g| action(g)).collect();
        let target = Arc::new(Group::generate(index, &gens, self.limits)?);
        let map: Vec<Elem> = (0..order as Elem)
            .map(|g| target.index[&action(g)])
            .collect();
        Ok(Quotient {
            group: target.clone(),
            hom: GroupHom { target, map },
        })
    }

    /// Elements whose order satisfies `pred`.
    pub fn elements_with_order_in(&self, pred: impl Fn(usize) -> bool) -> Vec<Elem> {
        (0..self.order() as Elem)
            .filter(|&x| pred(self.element_order(x)))
            .collect()
    }

    pub fn sylow_order(&self, p: u64) -> usize {
        crate::util::part(self.order() as u64, |q| q == p) as usize
    }
}

impl Quotient {
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        self.hom.image(h)
    }

    pub fn preimage(&self, source: &Group, h: &Subgroup) -> Subgroup {
        self.hom.preimage(source, h)
    }
}

fn dedup_gens(seed: &[Elem]) -> Vec<Elem> {
    let mut gens: Vec<Elem> = Vec::new();
    for &x in seed {
        if x != 0 && !gens.contains(&x) {
            gens.push(x);
        }
    }
    gens
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Group(degree {}, order {}, gens {:?})",
            self.degree,
            self.order(),
            self.generators
                .iter()
                .map(|&g| self.element(g))
                .collect::<Vec<_>>()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn by_cycles(g: &Group, text: &str) -> Elem {
        g.index_of(&Permutation::parse_cycles(g.degree(), text).unwrap())
            .unwrap()
    }

    #[test]
    fn generation_basics() {
        let g = Group::generate(
            3,
            &[
                Permutation::parse_cycles(3, "(1 2 3)").unwrap(),
                Permutation::parse_cycles(3, "(1 2)").unwrap(),
            ],
            Limits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        let t = Group::generate(1, &[], Limits::default()).unwrap();
        assert_eq!(t.order(), 1);
        let capped = Limits {
            element_cap: 10,
            ..Limits::default()
        };
        let err = Group::generate(
            4,
            &[
                Permutation::parse_cycles(4, "(1 2 3 4)").unwrap(),
                Permutation::parse_cycles(4, "(1 2)").unwrap(),
            ],
            capped,
        );
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn table_matches_composition() {
        let g = symmetric(4).unwrap();
        for x in 0..g.order() as Elem {
            for y in 0..g.order() as Elem {
                let p = g.element(x).then(g.element(y));
                assert_eq!(g.element(g.mul(x, y)), &p);
            }
        }
    }

    #[test]
    fn regenerating_from_all_elements_is_idempotent() {
        let g = dihedral(12).unwrap();
        let h = Group::generate(g.degree(), g.elements(), Limits::default()).unwrap();
        assert_eq!(g.elements(), h.elements());
    }

    #[test]
    fn centers_and_normalizers() {
        let q8 = quaternion8().unwrap();
        // oracle: exhaustive commuting check
        let n = q8.order() as Elem;
        let central = (0..n)
            .filter(|&x| (0..n).all(|y| q8.mul(x, y) == q8.mul(y, x)))
            .count();
        assert_eq!(central, 2);
        assert_eq!(q8.center().order(), 2);
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.center().order(), 1);
        let t = s3.cyclic(by_cycles(&s3, "(1 2)"));
        assert_eq!(s3.normalizer(&t).order(), 2);
    }

    #[test]
    fn element_orders() {
        let s5 = symmetric(5).unwrap();
        assert_eq!(s5.element_order(0), 1);
        assert_eq!(s5.element_order(by_cycles(&s5, "(1 2)(3 4 5)")), 6);
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.element_order(by_cycles(&s3, "(1 2 3)")), 3);
    }

    #[test]
    fn quotients() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.cyclic(by_cycles(&s3, "(1 2 3)"));
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.hom.is_homomorphism(&s3));
        assert_eq!(q.hom.kernel(&s3).bits(), a3.bits());
        let q8 = quaternion8().unwrap();
        let q = q8.quotient(&q8.center()).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!((1..4).all(|x| q.group.element_order(x) == 2));
        assert_eq!(q8.quotient(&q8.whole()).unwrap().group.order(), 1);
        let t = s3.cyclic(by_cycles(&s3, "(1 2)"));
        assert!(matches!(s3.quotient(&t), Err(Error::NotNormal)));
    }

    #[test]
    fn conjugacy_class_sizes() {
        let sizes = |g: &Group| {
            let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes(&symmetric(3).unwrap()), vec![1, 2, 3]);
        assert_eq!(sizes(&quaternion8().unwrap()), vec![1, 1, 2, 2, 2]);
        assert_eq!(sizes(&cyclic(5).unwrap()), vec![1; 5]);
    }

    #[test]
    fn cores_and_closures() {
        let s3 = symmetric(3).unwrap();
        let t = s3.cyclic(by_cycles(&s3, "(1 2)"));
        assert_eq!(s3.core(&t).order(), 1);
        assert_eq!(s3.normal_closure(&t).order(), 6);
        assert_eq!(s3.core_in(&t, &t).unwrap().bits(), t.bits());
        let a3 = s3.cyclic(by_cycles(&s3, "(1 2 3)"));
        assert_eq!(s3.core_in(&a3, &t), Err(Error::NotContained));
    }
}
