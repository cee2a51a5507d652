//! Hash-consed arena of straight line program nodes in Chomsky normal form.
//!
//! Every node is either a single letter or an ordered pair of earlier nodes,
//! so node ids are a topological order. Structurally equal nodes are shared.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::program::{Grammar, Item, Production, Program, Ref};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Letter(Letter),
    Pair(NodeId, NodeId),
}

#[derive(Debug, Clone, Default)]
pub struct Slp {
    nodes: Vec<Node>,
    lens: Vec<BigUint>,
    heights: Vec<u32>,
    index: HashMap<Node, NodeId>,
}

impl Slp {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let (len, height) = match node {
            Node::Letter(_) => (BigUint::one(), 0),
            Node::Pair(u, v) => (
                &self.lens[u.index()] + &self.lens[v.index()],
                1 + self.heights[u.index()].max(self.heights[v.index()]),
            ),
        };
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node);
        self.lens.push(len);
        self.heights.push(height);
        self.index.insert(node, id);
        id
    }

    pub fn letter(&mut self, l: Letter) -> NodeId {
        self.intern(Node::Letter(l))
    }

    pub fn pair(&mut self, u: NodeId, v: NodeId) -> NodeId {
        self.intern(Node::Pair(u, v))
    }

    /// Concatenation where `None` stands for the empty word.
    pub fn concat(&mut self, u: Option<NodeId>, v: Option<NodeId>) -> Option<NodeId> {
        match (u, v) {
            (None, x) | (x, None) => x,
            (Some(u), Some(v)) => Some(self.pair(u, v)),
        }
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id.index()]
    }

    pub fn len(&self, id: NodeId) -> &BigUint {
        &self.lens[id.index()]
    }

    pub fn height(&self, id: NodeId) -> u32 {
        self.heights[id.index()]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Letter at position `i` of `w_id`, found by descent.
    pub fn char_at(&self, mut id: NodeId, i: &BigUint) -> Letter {
        let mut i = i.clone();
        loop {
            match self.node(id) {
                Node::Letter(l) => return l,
                Node::Pair(u, v) => {
                    let ul = self.len(u);
                    if &i < ul {
                        id = u;
                    } else {
                        i -= ul;
                        id = v;
                    }
                }
            }
        }
    }

    pub fn first_letter(&self, id: NodeId) -> Letter {
        self.char_at(id, &BigUint::zero())
    }

    pub fn last_letter(&self, id: NodeId) -> Letter {
        self.char_at(id, &(self.len(id) - 1u32))
    }

    /// Full expansion, refused beyond `cap` letters.
    pub fn decompress(&self, id: Option<NodeId>, cap: u64) -> Result<Vec<Letter>> {
        let Some(id) = id else {
            return Ok(Vec::new());
        };
        let len = self.len(id);
        match len.to_u64() {
            Some(n) if n <= cap => {}
            _ => return Err(Error::CapExceeded(len.clone())),
        }
        let mut out = Vec::with_capacity(len.to_usize().unwrap_or(0));
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            match self.node(n) {
                Node::Letter(l) => out.push(l),
                Node::Pair(u, v) => {
                    stack.push(v);
                    stack.push(u);
                }
            }
        }
        Ok(out)
    }

    /// Nodes reachable from `roots`, sorted by id.
    pub fn reachable(&self, roots: &[NodeId]) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<NodeId> = roots.to_vec();
        let mut out = Vec::new();
        while let Some(n) = stack.pop() {
            if std::mem::replace(&mut seen[n.index()], true) {
                continue;
            }
            out.push(n);
            if let Node::Pair(u, v) = self.node(n) {
                stack.push(u);
                stack.push(v);
            }
        }
        out.sort_unstable();
        out
    }

    /// Export `root` as a normal-form program; `names` may label some nodes.
    pub fn to_program(
        &self,
        alphabet: &Alphabet,
        root: Option<NodeId>,
        names: &HashMap<NodeId, String>,
    ) -> Program {
        let mut g = Grammar::new(alphabet.clone());
        let Some(root) = root else {
            g.push("R", Production::Empty);
            return Program::new(g).expect("empty program is valid");
        };
        let order = self.reachable(&[root]);
        let mut local: HashMap<NodeId, crate::program::NtId> = HashMap::with_capacity(order.len());
        for &n in &order {
            let prod = match self.node(n) {
                Node::Letter(l) => Production::Terminal(l),
                Node::Pair(u, v) => Production::Seq(vec![
                    Item::Ref(Ref::plain(local[&u])),
                    Item::Ref(Ref::plain(local[&v])),
                ]),
            };
            let stem = names
                .get(&n)
                .cloned()
                .unwrap_or_else(|| format!("N{}", n.0));
            let id = g.push_fresh(&stem, prod);
            local.insert(n, id);
        }
        g.root = local[&root];
        Program::new(g).expect("arena export is a valid program")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_consing_shares_nodes() {
        let mut s = Slp::new();
        let a = s.letter(Letter(0));
        let b = s.letter(Letter(1));
        let ab = s.pair(a, b);
        assert_eq!(s.pair(a, b), ab);
        assert_eq!(s.node_count(), 3);
        assert_eq!(s.len(ab), &BigUint::from(2u32));
        assert_eq!(s.height(ab), 1);
    }

    #[test]
    fn char_at_and_decompress_agree() {
        let mut s = Slp::new();
        let a = s.letter(Letter(0));
        let b = s.letter(Letter(1));
        let mut x = s.pair(a, b);
        for _ in 0..5 {
            x = s.pair(x, a);
        }
        let w = s.decompress(Some(x), 100).unwrap();
        for (i, l) in w.iter().enumerate() {
            assert_eq!(s.char_at(x, &BigUint::from(i)), *l);
        }
        assert!(s.decompress(Some(x), 3).is_err());
    }
}
