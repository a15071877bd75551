//! The built-in group corpus and the text group format.

use std::fmt::Write as _;

use crate::construct;
use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Cyclic(usize),
    /// `C_p × C_p`.
    ElementaryAbelian(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
    Sl2(usize),
    /// `C_n ⋊ C_m` with the generator of `C_m` acting as `x ↦ x^k`.
    Metacyclic {
        n: usize,
        m: usize,
        k: u64,
    },
    Direct(Box<Recipe>, Box<Recipe>),
    /// Regular wreath product.
    Wreath(Box<Recipe>, Box<Recipe>),
}

impl Recipe {
    pub fn build(&self) -> Result<Group> {
        match self {
            Recipe::Cyclic(n) => construct::cyclic(*n),
            Recipe::ElementaryAbelian(p) => {
                construct::direct_product(&construct::cyclic(*p)?, &construct::cyclic(*p)?)
            }
            Recipe::Dihedral(n) => construct::dihedral(2 * n),
            Recipe::Quaternion => construct::quaternion8(),
            Recipe::Symmetric(n) => construct::symmetric(*n),
            Recipe::Alternating(n) => construct::alternating(*n),
            Recipe::Sl2(p) => construct::sl2(*p),
            Recipe::Metacyclic { n, m, k } => {
                let base = construct::cyclic(*n)?;
                let top = construct::cyclic(*m)?;
                let action = construct::power_action(&base, *k);
                construct::semidirect_product(&base, &top, &[action])
            }
            Recipe::Direct(a, b) => construct::direct_product(&a.build()?, &b.build()?),
            Recipe::Wreath(a, b) => {
                construct::wreath_regular(&a.build()?, &b.build()?, Limits::default().element_cap)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub order: usize,
    pub recipe: Recipe,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, order: usize, recipe: Recipe) -> Self {
        CorpusEntry {
            name: name.into(),
            order,
            recipe,
        }
    }

    /// Build the group under the given limits.
    pub fn build(&self, limits: Limits) -> Result<Group> {
        if self.order > limits.element_cap {
            return Err(Error::cap("group order", limits.element_cap));
        }
        let g = self.recipe.build()?;
        let gens: Vec<Permutation> = g
            .generators()
            .iter()
            .map(|&x| g.element(x).clone())
            .collect();
        let g = Group::generate(g.degree(), &gens, limits)?;
        if g.order() != self.order {
            return Err(Error::Invalid(format!(
                "{} built with order {}, expected {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

fn metacyclic(n: usize, m: usize, k: u64) -> Recipe {
    Recipe::Metacyclic { n, m, k }
}

fn direct(a: Recipe, b: Recipe) -> Recipe {
    Recipe::Direct(Box::new(a), Box::new(b))
}

/// Every corpus entry of order at most `max_order`, in a fixed order.
pub fn builtin_corpus(max_order: usize) -> Vec<CorpusEntry> {
    let mut all = Vec::new();
    for n in 1..=24 {
        all.push(CorpusEntry::new(format!("C{n}"), n, Recipe::Cyclic(n)));
    }
    for p in [2, 3, 5] {
        all.push(CorpusEntry::new(
            format!("C{p}xC{p}"),
            p * p,
            Recipe::ElementaryAbelian(p),
        ));
    }
    for n in 3..=12 {
        all.push(CorpusEntry::new(
            format!("D{n}"),
            2 * n,
            Recipe::Dihedral(n),
        ));
    }
    all.extend([
        CorpusEntry::new("Q8", 8, Recipe::Quaternion),
        CorpusEntry::new("S3", 6, Recipe::Symmetric(3)),
        CorpusEntry::new("S4", 24, Recipe::Symmetric(4)),
        CorpusEntry::new("S5", 120, Recipe::Symmetric(5)),
        CorpusEntry::new("A4", 12, Recipe::Alternating(4)),
        CorpusEntry::new("A5", 60, Recipe::Alternating(5)),
        CorpusEntry::new("SL(2,3)", 24, Recipe::Sl2(3)),
        CorpusEntry::new("SL(2,5)", 120, Recipe::Sl2(5)),
        CorpusEntry::new("C7:C3", 21, metacyclic(7, 3, 2)),
        CorpusEntry::new("C13:C3", 39, metacyclic(13, 3, 3)),
        CorpusEntry::new("C5:C4", 20, metacyclic(5, 4, 2)),
        CorpusEntry::new(
            "A4xC2",
            24,
            direct(Recipe::Alternating(4), Recipe::Cyclic(2)),
        ),
        CorpusEntry::new("SL(2,5)xC3", 360, direct(Recipe::Sl2(5), Recipe::Cyclic(3))),
        CorpusEntry::new(
            "C7:C3xC13:C3",
            819,
            direct(metacyclic(7, 3, 2), metacyclic(13, 3, 3)),
        ),
        CorpusEntry::new(
            "C3wrC2",
            18,
            Recipe::Wreath(Box::new(Recipe::Cyclic(3)), Box::new(Recipe::Cyclic(2))),
        ),
    ]);
    all.retain(|e| e.order <= max_order);
    all
}

/// Look up a corpus entry by name.
pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    builtin_corpus(usize::MAX)
        .into_iter()
        .find(|e| e.name == name)
}

/// Parse the text group format: a `degree N` line followed by `gen ...`
/// lines in 1-indexed disjoint cycle notation. Blank lines and `#` comments
/// are ignored.
pub fn parse_group(text: &str, limits: Limits) -> Result<Group> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "degree" => {
                if degree.is_some() {
                    return Err(err("duplicate degree line".into()));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("bad degree `{}`", rest.trim())))?;
                if d == 0 {
                    return Err(err("degree must be positive".into()));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| err("gen before degree".into()))?;
                let p =
                    Permutation::parse_cycles(d, rest.trim()).map_err(|e| err(e.to_string()))?;
                gens.push(p);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing degree line".into(),
    })?;
    Group::generate(degree, &gens, limits)
}

/// The text group format for `g`'s generators.
pub fn format_group(g: &Group) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for &x in g.generators() {
        writeln!(out, "gen {}", g.element(x).to_cycle_string()).expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_group("degree 3\ngen (1 2 3)\ngen (1 2)\n", Limits::default()).unwrap();
        assert_eq!(g.order(), 6);
        let g = parse_group("# trivial\ndegree 5\n", Limits::default()).unwrap();
        assert_eq!(g.order(), 1);
        let e = parse_group("degree 3\n\ngen (1 2)(2 3)\n", Limits::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = parse_group("gen (1 2)\n", Limits::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_group("degree 2\nfoo\n", Limits::default()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn format_round_trips() {
        let g = construct::symmetric(4).unwrap();
        let h = parse_group(&format_group(&g), Limits::default()).unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.elements(), g.elements());
    }

    #[test]
    fn corpus_filters() {
        let small = builtin_corpus(1);
        assert_eq!(small.len(), 1);
        assert_eq!(small[0].name, "C1");
        let names: Vec<String> = builtin_corpus(60).into_iter().map(|e| e.name).collect();
        assert!(names.contains(&"A5".to_string()));
        assert!(!names.contains(&"SL(2,5)".to_string()));
        let all = builtin_corpus(usize::MAX);
        let mut unique: Vec<&String> = all.iter().map(|e| &e.name).collect();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), all.len());
    }
}
