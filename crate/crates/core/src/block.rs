//! Blocks: `~`-equivalence classes of weights.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::{Label, Weight};

/// All weights equivalent to a representative, in canonical order.
///
/// Members are sorted colexicographically by their ∨-positions, a linear
/// extension of the Bruhat order (smaller weights first).
#[derive(Clone, Debug)]
pub struct Block {
    members: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl Block {
    pub fn of(representative: &Weight) -> Block {
        let core = representative.core_positions();
        let downs = representative.count_down();
        let mut members: Vec<Weight> = combinations(core.len(), downs)
            .into_iter()
            .map(|chosen| {
                let mut labels = representative.labels().to_vec();
                for &p in &core {
                    labels[p] = Label::Up;
                }
                for c in chosen {
                    labels[core[c]] = Label::Down;
                }
                Weight::new(labels)
            })
            .collect();
        members.sort();
        let index = members.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Block { members, index }
    }

    pub fn parse(text: &str) -> Result<Block> {
        Ok(Block::of(&Weight::parse(text)?))
    }

    pub fn members(&self) -> &[Weight] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    pub fn require(&self, w: &Weight) -> Result<usize> {
        self.position(w).ok_or_else(|| Error::BlockMismatch(w.to_string(), self.members[0].to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.members[0].len()
    }

    pub fn count_down(&self) -> usize {
        self.members[0].count_down()
    }

    pub fn count_up(&self) -> usize {
        self.members[0].count_up()
    }

    /// A block of rank `n`: exactly `n` ∨'s and `n` ∧'s.
    pub fn is_khovanov(&self) -> bool {
        self.count_down() == self.count_up()
    }

    /// `min(#∨, #∧)`, the largest defect of any member.
    pub fn defect(&self) -> usize {
        self.count_down().min(self.count_up())
    }

    /// The members of maximal defect, in block order.
    pub fn maximal_defect(&self) -> Vec<Weight> {
        let d = self.defect();
        self.members.iter().filter(|w| w.defect() == d).cloned().collect()
    }

    /// `λ ↦ λ↶` applied to every member.
    pub fn rotated(&self) -> Block {
        Block::of(&self.members[0].rotated())
    }
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Block {}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members[0])
    }
}

/// All `k`-subsets of `0..n`, each ascending.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Every block whose weights have exactly `n` vertices, each block listed once.
///
/// Blocks are generated from their ∘/×/core pattern and the number of ∨'s.
pub fn all_blocks(n: usize) -> Vec<Block> {
    let mut out = Vec::new();
    let mut pattern = vec![0u8; n];
    loop {
        let core = pattern.iter().filter(|&&p| p == 2).count();
        for downs in 0..=core {
            let mut remaining_down = downs;
            let labels = pattern
                .iter()
                .map(|&p| match p {
                    0 => Label::Nought,
                    1 => Label::Cross,
                    _ if remaining_down > 0 => {
                        remaining_down -= 1;
                        Label::Down
                    }
                    _ => Label::Up,
                })
                .collect();
            out.push(Block::of(&Weight::new(labels)));
        }
        // next pattern in base 3
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            pattern[i] += 1;
            if pattern[i] < 3 {
                break;
            }
            pattern[i] = 0;
            i += 1;
        }
    }
}

/// Blocks of weights with exactly `n` ∨'s, `n` ∧'s and nothing else.
pub fn khovanov_block(n: usize) -> Block {
    let text: String = "v".repeat(n) + &"^".repeat(n);
    Block::parse(&text).expect("valid weight")
}
