//! A set trie over bitmasks answering "which stored sets are subsets of Q".

#[derive(Default, Clone)]
struct Node {
    children: Vec<(u8, u32)>,
    terminal: bool,
}

#[derive(Clone)]
pub(crate) struct SubsetTrie {
    nodes: Vec<Node>,
    len: usize,
}

impl Default for SubsetTrie {
    fn default() -> Self {
        SubsetTrie {
            nodes: vec![Node::default()],
            len: 0,
        }
    }
}

impl SubsetTrie {
    pub fn clear(&mut self) {
        self.nodes.truncate(1);
        self.nodes[0] = Node::default();
        self.len = 0;
    }

    /// The number of distinct stored sets.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, mut mask: u64) {
        let mut at = 0usize;
        while mask != 0 {
            let b = mask.trailing_zeros() as u8;
            mask &= mask - 1;
            at = match self.nodes[at].children.iter().find(|(c, _)| *c == b) {
                Some(&(_, next)) => next as usize,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[at].children.push((b, next as u32));
                    next
                }
            };
        }
        self.len += !self.nodes[at].terminal as usize;
        self.nodes[at].terminal = true;
    }

    /// Whether some stored set `b` has `lo ⊆ b ⊆ hi`.
    pub fn any_between(&self, lo: u64, hi: u64) -> bool {
        lo & !hi == 0 && self.between(0, lo, hi)
    }

    fn between(&self, at: u32, lo: u64, hi: u64) -> bool {
        let node = &self.nodes[at as usize];
        if lo == 0 && node.terminal {
            return true;
        }
        node.children.iter().any(|&(b, next)| {
            // Bits are stored in ascending order, so a missing lower bit of
            // `lo` can no longer appear below this child.
            hi >> b & 1 == 1 && lo & ((1u64 << b) - 1) == 0 && self.between(next, lo & !(1 << b), hi)
        })
    }

    /// Whether some stored subset of `q` satisfies `f`.
    pub fn any_subset_of(&self, q: u64, f: &mut impl FnMut(u64) -> bool) -> bool {
        self.subsets(0, 0, q, f)
    }

    fn subsets(&self, at: u32, mask: u64, q: u64, f: &mut impl FnMut(u64) -> bool) -> bool {
        let node = &self.nodes[at as usize];
        (node.terminal && f(mask))
            || node
                .children
                .iter()
                .any(|&(b, next)| q >> b & 1 == 1 && self.subsets(next, mask | 1 << b, q, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_queries() {
        let mut t = SubsetTrie::default();
        assert!(!t.any_between(0, u64::MAX));
        for m in [0b0110, 0b1001, 0b0111] {
            t.insert(m);
        }
        assert!(t.any_between(0, 0b0110));
        assert!(!t.any_between(0, 0b0101));
        assert!(t.any_between(0b0001, 0b1111));
        assert!(t.any_between(0b0011, 0b0111));
        assert!(!t.any_between(0b0011, 0b1011));
        assert!(!t.any_between(0b1000, 0b1110));
        let mut found = Vec::new();
        assert!(!t.any_subset_of(0b1111, &mut |m| {
            found.push(m);
            false
        }));
        found.sort();
        assert!(t.any_subset_of(0b1111, &mut |m| m == 0b0111));
        assert_eq!(found, [0b0110, 0b0111, 0b1001]);
        t.insert(0);
        assert!(t.any_between(0, 0));
        assert_eq!(t.len(), 4);
        t.insert(0b1001);
        assert_eq!(t.len(), 4);
        t.clear();
        assert!(!t.any_between(0, u64::MAX));
    }
}
