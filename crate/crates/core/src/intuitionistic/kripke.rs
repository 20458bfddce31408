//! Finite Kripke models and bounded countermodel search.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::syntax::{Formula, Sequent, Succedent};

/// Largest model `countermodel` will enumerate.
pub const MAX_WORLDS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct World {
    pub id: usize,
    pub atoms: BTreeSet<String>,
}

/// A rooted finite model. World 0 is the root; `order` lists every pair
/// `(w, v)` with `w <= v`, reflexive pairs included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: Vec<World>,
    pub order: Vec<(usize, usize)>,
}

impl KripkeModel {
    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.order.contains(&(w, v))
    }

    fn above(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().filter(move |(a, _)| *a == w).map(|(_, b)| *b)
    }

    /// Reflexive, transitive, antisymmetric, and valuations persist upward.
    pub fn is_well_formed(&self) -> bool {
        let n = self.worlds.len();
        let ids_ok = self.worlds.iter().enumerate().all(|(i, w)| w.id == i);
        let in_range = self.order.iter().all(|&(a, b)| a < n && b < n);
        let refl = (0..n).all(|w| self.leq(w, w));
        let antisym = self.order.iter().all(|&(a, b)| a == b || !self.leq(b, a));
        let trans = self
            .order
            .iter()
            .all(|&(a, b)| self.above(b).all(|c| self.leq(a, c)));
        let persist = self
            .order
            .iter()
            .all(|&(a, b)| self.worlds[a].atoms.is_subset(&self.worlds[b].atoms));
        ids_ok && in_range && refl && antisym && trans && persist
    }

    pub fn forces(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(a) => self.worlds[w].atoms.contains(a.as_ref()),
            Formula::And(a, b) => self.forces(w, a) && self.forces(w, b),
            Formula::Or(a, b) => self.forces(w, a) || self.forces(w, b),
            Formula::Neg(a) => self.above(w).all(|v| !self.forces(v, a)),
            Formula::Imp(a, b) => self.above(w).all(|v| !self.forces(v, a) || self.forces(v, b)),
        }
    }

    /// The root forces every antecedent formula but not the succedent.
    pub fn refutes(&self, s: &Sequent) -> bool {
        s.antecedent().iter().all(|f| self.forces(0, f))
            && match s.succedent() {
                Succedent::Absurd => true,
                Succedent::Conclusion(g) => !self.forces(0, g),
            }
    }
}

/// Rooted partial orders on `n` worlds whose order extends index order, as
/// `le[w]` bitmasks of the worlds above `w`.
fn orders(n: usize) -> Vec<Vec<u32>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for choice in 0u32..(1 << pairs.len()) {
        let mut le: Vec<u32> = (0..n).map(|w| 1 << w).collect();
        le[0] = (1 << n) - 1;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if choice & (1 << k) != 0 {
                le[a] |= 1 << b;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n)
                .filter(|&b| le[a] & (1 << b) != 0)
                .all(|b| le[b] & !le[a] == 0)
        });
        if transitive {
            out.push(le);
        }
    }
    out
}

/// A smallest rooted model with at most `max_worlds` worlds refuting `s`,
/// found by exhaustive enumeration in a fixed order. Only atoms of `s` are
/// valued.
pub fn countermodel(s: &Sequent, max_worlds: usize) -> Option<KripkeModel> {
    assert!(max_worlds <= MAX_WORLDS, "countermodel supports at most {MAX_WORLDS} worlds");
    let atoms: Vec<String> = s
        .antecedent()
        .iter()
        .chain(s.succedent().formula())
        .flat_map(|f| f.atoms())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|a| a.to_string())
        .collect();
    let k = atoms.len();
    for n in 1..=max_worlds {
        for le in orders(n) {
            let le = &le;
            let order: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).filter(move |&b| le[a] & (1 << b) != 0).map(move |b| (a, b)))
                .collect();
            // Each atom is valued by an up-closed set of worlds.
            let upsets: Vec<u32> = (0u32..(1 << n))
                .filter(|&set| (0..n).all(|w| set & (1 << w) == 0 || le[w] & !set == 0))
                .collect();
            let mut pick = vec![0usize; k];
            loop {
                let worlds = (0..n)
                    .map(|w| World {
                        id: w,
                        atoms: (0..k)
                            .filter(|&i| upsets[pick[i]] & (1 << w) != 0)
                            .map(|i| atoms[i].clone())
                            .collect(),
                    })
                    .collect();
                let m = KripkeModel {
                    worlds,
                    order: order.clone(),
                };
                if m.refutes(s) {
                    return Some(m);
                }
                let mut i = 0;
                while i < k {
                    pick[i] += 1;
                    if pick[i] < upsets.len() {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    None
}
