//! Exhaustive enumeration of formulas and sequents over a fixed set of atoms.

use serde::Serialize;

use crate::syntax::{Formula, Sequent, Succedent};

/// Atom names used for generated families: `p, q, r, s, t, u`, then `a6, a7, ...`.
pub fn default_atoms(k: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["p", "q", "r", "s", "t", "u"];
    (0..k)
        .map(|i| NAMES.get(i).map_or_else(|| format!("a{i}"), |s| s.to_string()))
        .collect()
}

/// All formulas over `atoms`, grouped by exact weight: `out[w]` holds the
/// formulas of weight `w` (index 0 is empty).
pub fn formulas_up_to(atoms: &[String], max_weight: usize) -> Vec<Vec<Formula>> {
    let mut by_weight: Vec<Vec<Formula>> = vec![Vec::new(); max_weight + 1];
    if max_weight == 0 {
        return by_weight;
    }
    by_weight[1] = atoms.iter().map(Formula::atom).collect();
    for w in 2..=max_weight {
        let mut layer: Vec<Formula> = by_weight[w - 1].iter().cloned().map(Formula::neg).collect();
        for lw in 1..w - 1 {
            let rw = w - 1 - lw;
            for l in &by_weight[lw] {
                for r in &by_weight[rw] {
                    layer.push(Formula::and(l.clone(), r.clone()));
                    layer.push(Formula::or(l.clone(), r.clone()));
                    layer.push(Formula::imp(l.clone(), r.clone()));
                }
            }
        }
        by_weight[w] = layer;
    }
    by_weight
}

/// Every sequent whose formulas are built from `atoms` and whose total
/// weight is at most `weight_cap`, in canonical order. The empty judgment
/// is excluded.
pub fn sequent_family(atoms: &[String], weight_cap: usize) -> Vec<Sequent> {
    let layers = formulas_up_to(atoms, weight_cap);
    let pool: Vec<(Formula, usize)> = layers
        .iter()
        .enumerate()
        .flat_map(|(w, fs)| fs.iter().map(move |f| (f.clone(), w)))
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<Formula> = Vec::new();

    fn succedents(
        chosen: &[Formula],
        budget: usize,
        layers: &[Vec<Formula>],
        out: &mut Vec<Sequent>,
    ) {
        if !chosen.is_empty() {
            out.push(Sequent::new(chosen.iter().cloned(), Succedent::Absurd));
        }
        for layer in layers.iter().take(budget + 1) {
            for f in layer {
                out.push(Sequent::new(chosen.iter().cloned(), Succedent::Conclusion(f.clone())));
            }
        }
    }

    fn pick(
        start: usize,
        budget: usize,
        pool: &[(Formula, usize)],
        layers: &[Vec<Formula>],
        chosen: &mut Vec<Formula>,
        out: &mut Vec<Sequent>,
    ) {
        succedents(chosen, budget, layers, out);
        for i in start..pool.len() {
            let (f, w) = &pool[i];
            if *w > budget {
                // `pool` is sorted by weight.
                break;
            }
            chosen.push(f.clone());
            pick(i + 1, budget - w, pool, layers, chosen, out);
            chosen.pop();
        }
    }

    pick(0, weight_cap, &pool, &layers, &mut chosen, &mut out);
    out.sort();
    out
}

/// `|- F` for every formula over `atoms` with weight at most `max_weight`.
pub fn theorem_candidates(atoms: &[String], max_weight: usize) -> Vec<Sequent> {
    let mut out: Vec<Sequent> = formulas_up_to(atoms, max_weight)
        .into_iter()
        .flatten()
        .map(|f| Sequent::proves([], f))
        .collect();
    out.sort();
    out
}

/// A bounded family of sequents, named by its generating parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequentFamily {
    pub atoms: Vec<String>,
    pub weight_cap: usize,
}

impl SequentFamily {
    pub fn new(atom_count: usize, weight_cap: usize) -> SequentFamily {
        SequentFamily {
            atoms: default_atoms(atom_count),
            weight_cap,
        }
    }

    pub fn with_atoms(atoms: &[&str], weight_cap: usize) -> SequentFamily {
        SequentFamily {
            atoms: atoms.iter().map(|s| s.to_string()).collect(),
            weight_cap,
        }
    }

    pub fn sequents(&self) -> Vec<Sequent> {
        sequent_family(&self.atoms, self.weight_cap)
    }

    pub fn describe(&self) -> String {
        format!(
            "all sequents over atoms {{{}}} with sequent weight <= {}",
            self.atoms.join(", "),
            self.weight_cap
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Formula counts by weight over two atoms, from the recurrence
    /// c(1) = 2, c(w) = c(w-1) + 3 * sum_{i+j=w-1} c(i) c(j).
    const TWO_ATOM_COUNTS: [usize; 8] = [0, 2, 2, 14, 38, 218, 842, 4502];

    #[test]
    fn formula_counts_match_recurrence() {
        let layers = formulas_up_to(&default_atoms(2), 7);
        let counts: Vec<usize> = layers.iter().map(Vec::len).collect();
        assert_eq!(counts, TWO_ATOM_COUNTS);
        let distinct: HashSet<_> = layers.iter().flatten().collect();
        assert_eq!(distinct.len(), TWO_ATOM_COUNTS.iter().sum::<usize>());
    }

    #[test]
    fn family_size_and_bounds() {
        // Independent count: subsets of the formula pool by total weight,
        // times the succedent choices that fit the remaining budget.
        let cap = 5;
        let atoms = default_atoms(2);
        let mut sets = vec![0usize; cap + 1];
        sets[0] = 1;
        for (w, &c) in TWO_ATOM_COUNTS.iter().enumerate().take(cap + 1).skip(1) {
            for _ in 0..c {
                for total in (w..=cap).rev() {
                    sets[total] += sets[total - w];
                }
            }
        }
        let mut expected = 0;
        for (wa, &n) in sets.iter().enumerate() {
            if wa > 0 {
                expected += n;
            }
            for ws in 1..=cap - wa {
                expected += n * TWO_ATOM_COUNTS[ws];
            }
        }
        let family = sequent_family(&atoms, cap);
        assert_eq!(family.len(), expected);
        assert!(family.iter().all(|s| s.weight() <= cap && !s.is_empty_judgment()));
        let distinct: HashSet<_> = family.iter().collect();
        assert_eq!(distinct.len(), family.len());
    }

    #[test]
    fn small_family_by_hand() {
        let fam = SequentFamily::with_atoms(&["p"], 2).sequents();
        let printed: Vec<String> = fam.iter().map(Sequent::print).collect();
        assert_eq!(printed, ["p |-", "|- p", "p |- p", "|- ~p", "~p |-"]);
    }
}
