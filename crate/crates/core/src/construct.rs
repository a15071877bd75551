//! Standard constructors for small permutation groups.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Limits};
use crate::perm::Permutation;

fn gen(degree: usize, limits: Limits, gens: Vec<Permutation>) -> Result<Group> {
    Group::generate(degree, &gens, limits)
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    let points: Vec<usize> = (0..n).collect();
    gen(n, Limits::default(), vec![cycle(n, &points)])
}

/// Dihedral group of the given order (`2n`). Order 4 is the Klein four-group.
pub fn dihedral(order: usize) -> Result<Group> {
    if order == 0 || order % 2 == 1 {
        return Err(Error::Invalid(format!(
            "dihedral order {order} must be even"
        )));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => {
            let a = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
            let b = Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
            gen(4, Limits::default(), vec![a, b])
        }
        _ => {
            let points: Vec<usize> = (0..n).collect();
            let r = cycle(n, &points);
            let s = Permutation::from_images((0..n).map(|i| ((n - i) % n) as u32).collect())?;
            gen(n, Limits::default(), vec![r, s])
        }
    }
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Invalid("symmetric group on 0 points".into()));
    }
    if n == 1 {
        return gen(1, Limits::default(), vec![]);
    }
    let points: Vec<usize> = (0..n).collect();
    gen(
        n,
        Limits::default(),
        vec![cycle(n, &[0, 1]), cycle(n, &points)],
    )
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Invalid("alternating group on 0 points".into()));
    }
    let gens = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
    gen(n, Limits::default(), gens)
}

/// Q8 in its regular representation on `{±1, ±i, ±j, ±k}`.
pub fn quaternion8() -> Result<Group> {
    // unit u ∈ {1,i,j,k} = 0..4, element = sign*4 + u
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mul = |x: usize, y: usize| -> usize {
        let (sx, ux) = (x / 4, x % 4);
        let (sy, uy) = (y / 4, y % 4);
        let (s, u) = UNIT[ux][uy];
        ((sx + sy + s) % 2) * 4 + u
    };
    let right = |g: usize| {
        Permutation::from_images((0..8).map(|x| mul(x, g) as u32).collect()).expect("regular")
    };
    gen(8, Limits::default(), vec![right(1), right(2)])
}

/// SL(2, p) acting on the `p² − 1` nonzero row vectors of `F_p²`.
pub fn sl2(p: usize) -> Result<Group> {
    if !crate::util::is_prime(p as u64) {
        return Err(Error::Invalid(format!("sl2 needs a prime, got {p}")));
    }
    let idx = |a: usize, b: usize| a * p + b - 1;
    let matrix = |m: [[usize; 2]; 2]| {
        let mut images = vec![0u32; p * p - 1];
        for a in 0..p {
            for b in 0..p {
                if a == 0 && b == 0 {
                    continue;
                }
                let c = (a * m[0][0] + b * m[1][0]) % p;
                let d = (a * m[0][1] + b * m[1][1]) % p;
                images[idx(a, b)] = idx(c, d) as u32;
            }
        }
        Permutation::from_images(images).expect("invertible matrix")
    };
    let gens = vec![matrix([[1, 1], [0, 1]]), matrix([[1, 0], [1, 1]])];
    gen(p * p - 1, Limits::default(), gens)
}

fn shift(p: &Permutation, offset: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &x) in p.images().iter().enumerate() {
        images[offset + i] = offset as u32 + x;
    }
    Permutation::from_images(images).expect("shifted permutation")
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let degree = a.degree() + b.degree();
    let cap = a.limits().element_cap;
    if a.order().saturating_mul(b.order()) > cap {
        return Err(Error::cap("direct product order", cap));
    }
    let mut gens: Vec<Permutation> = a
        .generators()
        .iter()
        .map(|&g| shift(a.element(g), 0, degree))
        .collect();
    gens.extend(
        b.generators()
            .iter()
            .map(|&g| shift(b.element(g), a.degree(), degree)),
    );
    gen(degree, a.limits(), gens)
}

/// Extends images of `n`'s generators to a map on all of `n`, checking that
/// the result is an automorphism.
fn extend_automorphism(n: &Group, gen_images: &[Elem]) -> Result<Vec<Elem>> {
    let gens = n.generators();
    if gen_images.len() != gens.len() {
        return Err(Error::BadAction(format!(
            "expected {} generator images, got {}",
            gens.len(),
            gen_images.len()
        )));
    }
    let size = n.order();
    let mut map = vec![Elem::MAX; size];
    map[0] = 0;
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        for (s, &g) in gens.iter().enumerate() {
            let y = n.mul(x, g);
            let img = n.mul(map[x as usize], gen_images[s]);
            if map[y as usize] == Elem::MAX {
                map[y as usize] = img;
                queue.push(y);
            } else if map[y as usize] != img {
                return Err(Error::BadAction(
                    "images do not define a homomorphism".into(),
                ));
            }
        }
        head += 1;
    }
    let mut hit = vec![false; size];
    for &y in &map {
        if hit[y as usize] {
            return Err(Error::BadAction("map is not injective".into()));
        }
        hit[y as usize] = true;
    }
    Ok(map)
}

/// `N ⋊ H` where `action[s][t]` is the image of the `t`-th generator of `N`
/// under the `s`-th generator of `H` (a right action: `n^(h₁h₂) = (n^h₁)^h₂`).
///
/// Realized by the right regular action on pairs `(h, n)` with
/// `(h₁, n₁)(h₂, n₂) = (h₁h₂, n₁^h₂ · n₂)`.
pub fn semidirect_product(n: &Group, h: &Group, action: &[Vec<Elem>]) -> Result<Group> {
    if action.len() != h.generators().len() {
        return Err(Error::BadAction(format!(
            "expected images for {} generators of the acting group",
            h.generators().len()
        )));
    }
    let gen_auts: Vec<Vec<Elem>> = action
        .iter()
        .map(|imgs| extend_automorphism(n, imgs))
        .collect::<Result<_>>()?;

    // α for every element of H, checking that H → Aut(N) is well defined
    let mut auts: HashMap<Elem, Vec<Elem>> = HashMap::new();
    auts.insert(0, (0..n.order() as Elem).collect());
    let mut queue = vec![0 as Elem];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        for (s, &g) in h.generators().iter().enumerate() {
            let y = h.mul(x, g);
            let ax = &auts[&x];
            let composed: Vec<Elem> = ax.iter().map(|&v| gen_auts[s][v as usize]).collect();
            match auts.get(&y) {
                None => {
                    auts.insert(y, composed);
                    queue.push(y);
                }
                Some(existing) if *existing != composed => {
                    return Err(Error::BadAction(
                        "action does not respect the relations of the acting group".into(),
                    ));
                }
                Some(_) => {}
            }
        }
        head += 1;
    }

    let (hn, nn) = (h.order(), n.order());
    let degree = hn * nn;
    let cap = n.limits().element_cap;
    if degree > cap {
        return Err(Error::cap("semidirect product order", cap));
    }
    let point = |hx: Elem, nx: Elem| hx as usize * nn + nx as usize;
    let mut gens = Vec::new();
    for &s in h.generators() {
        let a = &auts[&s];
        let mut images = vec![0u32; degree];
        for hx in 0..hn as Elem {
            for nx in 0..nn as Elem {
                images[point(hx, nx)] = point(h.mul(hx, s), a[nx as usize]) as u32;
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    for &t in n.generators() {
        let mut images = vec![0u32; degree];
        for hx in 0..hn as Elem {
            for nx in 0..nn as Elem {
                images[point(hx, nx)] = point(hx, n.mul(nx, t)) as u32;
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    gen(degree, n.limits(), gens)
}

/// Regular wreath product `A wr B`: `|B|` copies of `A`'s points, permuted by
/// the right regular action of `B`.
pub fn wreath_regular(a: &Group, b: &Group, size_cap: usize) -> Result<Group> {
    let copies = b.order();
    let mut order: u128 = b.order() as u128;
    for _ in 0..copies {
        order = order.saturating_mul(a.order() as u128);
        if order > size_cap as u128 {
            return Err(Error::cap("wreath product order", size_cap));
        }
    }
    let da = a.degree();
    let degree = da * copies;
    let mut gens = Vec::new();
    for &g in a.generators() {
        gens.push(shift(a.element(g), 0, degree));
    }
    for &s in b.generators() {
        let mut images = vec![0u32; degree];
        for blk in 0..copies as Elem {
            let to = b.mul(blk, s) as usize;
            for p in 0..da {
                images[blk as usize * da + p] = (to * da + p) as u32;
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    let limits = Limits {
        element_cap: size_cap.max(a.limits().element_cap),
        ..a.limits()
    };
    gen(degree, limits, gens)
}

/// The power map `x ↦ x^k` on a cyclic group, as an action table entry.
pub fn power_action(n: &Group, k: u64) -> Vec<Elem> {
    n.generators().iter().map(|&g| n.pow(g, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commutative(g: &Group) -> bool {
        let n = g.order() as Elem;
        (0..n).all(|x| (0..n).all(|y| g.mul(x, y) == g.mul(y, x)))
    }

    #[test]
    fn orders_of_standard_families() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(dihedral(8).unwrap().order(), 8);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(dihedral(2).unwrap().order(), 2);
        assert_eq!(quaternion8().unwrap().order(), 8);
        assert_eq!(cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(sl2(3).unwrap().order(), 24);
        let g = sl2(5).unwrap();
        assert_eq!(g.degree(), 24);
        assert_eq!(g.order(), 120);
    }

    #[test]
    fn frobenius_21() {
        let c7 = cyclic(7).unwrap();
        let c3 = cyclic(3).unwrap();
        let g = semidirect_product(&c7, &c3, &[power_action(&c7, 2)]).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!commutative(&g));
    }

    #[test]
    fn bad_action_rejected() {
        let c7 = cyclic(7).unwrap();
        let c3 = cyclic(3).unwrap();
        // x -> x^3 has order 6 in Aut(C7), so it is not an action of C3
        assert!(matches!(
            semidirect_product(&c7, &c3, &[power_action(&c7, 3)]),
            Err(Error::BadAction(_))
        ));
        // x -> x^0 is not an automorphism
        assert!(matches!(
            semidirect_product(&c7, &c3, &[power_action(&c7, 7)]),
            Err(Error::BadAction(_))
        ));
    }

    #[test]
    fn wreath_c3_c2() {
        let g = wreath_regular(&cyclic(3).unwrap(), &cyclic(2).unwrap(), 1000).unwrap();
        assert_eq!(g.order(), 18);
        assert!(wreath_regular(&cyclic(23).unwrap(), &cyclic(11).unwrap(), 100_000).is_err());
    }
}
