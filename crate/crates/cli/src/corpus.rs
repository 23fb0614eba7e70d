//! Generated corpora of propositional formulas and sequents.

use std::fmt;
use std::str::FromStr;

use dualis::calculus::Sequent;
use dualis::formula::Formula;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest formula pool `enumerate_formulas` will build.
pub const MAX_CORPUS_FORMULAS: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Template {
    /// `|- A` for every formula in the pool.
    Right,
    /// `A |-` for every formula in the pool.
    Left,
    /// Seeded random sequents with up to `max_per_side` formulas a side.
    Multi,
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Template::Right => "right",
            Template::Left => "left",
            Template::Multi => "multi",
        })
    }
}

impl FromStr for Template {
    type Err = String;

    fn from_str(s: &str) -> Result<Template, String> {
        match s {
            "right" => Ok(Template::Right),
            "left" => Ok(Template::Left),
            "multi" => Ok(Template::Multi),
            other => Err(format!("unknown template `{other}` (expected right, left or multi)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub atom_count: usize,
    /// Largest connective count in the formula pool.
    pub max_size: usize,
    pub templates: Vec<Template>,
    /// Number of `multi` sequents.
    pub multi_count: usize,
    pub max_per_side: usize,
    /// Largest connective count of a formula inside a `multi` sequent.
    pub multi_max_size: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> CorpusSpec {
        CorpusSpec {
            atom_count: 2,
            max_size: 3,
            templates: vec![Template::Right, Template::Left, Template::Multi],
            multi_count: 2000,
            max_per_side: 3,
            multi_max_size: 2,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusError {
    NoAtoms,
    ZeroSize,
    TooLarge { formulas: u128 },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::NoAtoms => f.write_str("atom count must be at least 1"),
            CorpusError::ZeroSize => f.write_str("maximum size must be at least 1"),
            CorpusError::TooLarge { formulas } => {
                write!(f, "corpus would hold {formulas} formulas, over the limit of {MAX_CORPUS_FORMULAS}")
            }
        }
    }
}

impl std::error::Error for CorpusError {}

pub fn atom_names(n: usize) -> Vec<String> {
    const FIRST: [&str; 4] = ["p", "q", "r", "s"];
    (0..n).map(|i| FIRST.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string())).collect()
}

/// Number of formulas with exactly `size` connectives, for each size up
/// to `max_size`. Saturates instead of overflowing.
pub fn counts_by_size(atom_count: usize, max_size: usize) -> Vec<u128> {
    let mut f: Vec<u128> = vec![atom_count as u128];
    for n in 1..=max_size {
        let mut binary: u128 = 0;
        for i in 0..n {
            binary = binary.saturating_add(f[i].saturating_mul(f[n - 1 - i]));
        }
        f.push(f[n - 1].saturating_add(binary.saturating_mul(3)));
    }
    f
}

pub fn count_formulas(atom_count: usize, max_size: usize) -> u128 {
    counts_by_size(atom_count, max_size).into_iter().fold(0, u128::saturating_add)
}

/// Formulas grouped by exact size: negations first, then `&`, `|`, `->`
/// over every split of the remaining connectives.
pub fn formulas_by_size(atoms: &[String], max_size: usize) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = vec![atoms.iter().map(|a| Formula::atom(a)).collect()];
    for n in 1..=max_size {
        let mut out: Vec<Formula> = levels[n - 1].iter().map(|f| Formula::not(f.clone())).collect();
        for i in 0..n {
            for a in &levels[i] {
                for b in &levels[n - 1 - i] {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b.clone()));
                    out.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        levels.push(out);
    }
    levels
}

pub fn enumerate_formulas(atom_count: usize, max_size: usize) -> Result<Vec<Formula>, CorpusError> {
    if atom_count == 0 {
        return Err(CorpusError::NoAtoms);
    }
    let formulas = count_formulas(atom_count, max_size);
    if formulas > MAX_CORPUS_FORMULAS {
        return Err(CorpusError::TooLarge { formulas });
    }
    Ok(formulas_by_size(&atom_names(atom_count), max_size).into_iter().flatten().collect())
}

/// The formula at position `index` among formulas of exactly `size`
/// connectives, in `formulas_by_size` order.
pub fn unrank_formula(atoms: &[String], size: usize, mut index: u128, counts: &[u128]) -> Formula {
    if size == 0 {
        return Formula::atom(&atoms[index as usize]);
    }
    if index < counts[size - 1] {
        return Formula::not(unrank_formula(atoms, size - 1, index, counts));
    }
    index -= counts[size - 1];
    for i in 0..size {
        let (left, right) = (counts[i], counts[size - 1 - i]);
        let block = 3 * left * right;
        if index < block {
            let pair = index / 3;
            let a = unrank_formula(atoms, i, pair / right, counts);
            let b = unrank_formula(atoms, size - 1 - i, pair % right, counts);
            return match index % 3 {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                _ => Formula::imp(a, b),
            };
        }
        index -= block;
    }
    panic!("index out of range for size {size}")
}

/// A formula with exactly `size` connectives drawn uniformly from all such
/// formulas.
pub fn uniform_formula(rng: &mut impl Rng, atoms: &[String], size: usize, counts: &[u128]) -> Formula {
    unrank_formula(atoms, size, rng.gen_range(0..counts[size]), counts)
}

/// Sequents in generation order: templates in the order given, the pool
/// in enumeration order, then the seeded `multi` samples.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<Sequent>, CorpusError> {
    if spec.max_size == 0 {
        return Err(CorpusError::ZeroSize);
    }
    let pool = enumerate_formulas(spec.atom_count, spec.max_size)?;
    let mut out = Vec::new();
    for t in &spec.templates {
        match t {
            Template::Right => out.extend(pool.iter().map(|f| Sequent::new(vec![], vec![f.clone()]))),
            Template::Left => out.extend(pool.iter().map(|f| Sequent::new(vec![f.clone()], vec![]))),
            Template::Multi => {
                let small = enumerate_formulas(spec.atom_count, spec.multi_max_size.min(spec.max_size))?;
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                for _ in 0..spec.multi_count {
                    let side = |rng: &mut ChaCha8Rng| {
                        let n = rng.gen_range(0..=spec.max_per_side);
                        (0..n).map(|_| small.choose(rng).expect("non-empty pool").clone()).collect::<Vec<_>>()
                    };
                    let ant = side(&mut rng);
                    let suc = side(&mut rng);
                    out.push(Sequent::new(ant, suc));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_enumeration() {
        let atoms = atom_names(2);
        let levels = formulas_by_size(&atoms, 3);
        let counts = counts_by_size(2, 7);
        assert_eq!(counts, vec![2, 14, 182, 2954, 53690, 1045478, 21326942, 449878226]);
        for (n, level) in levels.iter().enumerate() {
            assert_eq!(level.len() as u128, counts[n]);
            assert!(level.iter().all(|f| f.size() == n));
        }
        assert_eq!(count_formulas(2, 4), 56842);
    }

    #[test]
    fn guard_refuses_large_pools() {
        assert!(enumerate_formulas(2, 4).is_ok());
        assert_eq!(enumerate_formulas(2, 5), Err(CorpusError::TooLarge { formulas: 1102320 }));
        assert_eq!(enumerate_formulas(0, 1), Err(CorpusError::NoAtoms));
    }

    #[test]
    fn unranking_follows_enumeration_order() {
        let atoms = atom_names(2);
        let levels = formulas_by_size(&atoms, 3);
        let counts = counts_by_size(2, 3);
        for (n, level) in levels.iter().enumerate() {
            for (i, f) in level.iter().enumerate() {
                assert_eq!(&unrank_formula(&atoms, n, i as u128, &counts), f);
            }
        }
    }

    #[test]
    fn uniform_sampler_hits_every_formula() {
        let atoms = atom_names(2);
        let counts = counts_by_size(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..20_000 {
            let f = uniform_formula(&mut rng, &atoms, 2, &counts);
            assert_eq!(f.size(), 2);
            seen.insert(f);
        }
        assert_eq!(seen.len(), 182);
    }

    #[test]
    fn generation_is_reproducible() {
        let spec = CorpusSpec { multi_count: 50, ..CorpusSpec::default() };
        let a = generate(&spec).unwrap();
        assert_eq!(a, generate(&spec).unwrap());
        assert_eq!(a.len(), 2 * 3152 + 50);
        let multi = &a[2 * 3152..];
        assert!(multi.iter().all(|s| s.antecedent.len() <= 3 && s.succedent.len() <= 3));
        let other = generate(&CorpusSpec { seed: 7, ..spec }).unwrap();
        assert_ne!(&other[2 * 3152..], multi);
    }
}
