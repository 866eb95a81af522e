//! Weights: labelled number lines.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Label attached to one vertex of a number line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// `o`
    Nought,
    /// `x`
    Cross,
    /// `v`
    Down,
    /// `^`
    Up,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Nought, Label::Cross, Label::Down, Label::Up];

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'o' => Some(Label::Nought),
            'x' => Some(Label::Cross),
            'v' => Some(Label::Down),
            '^' => Some(Label::Up),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Label::Nought => 'o',
            Label::Cross => 'x',
            Label::Down => 'v',
            Label::Up => '^',
        }
    }

    /// `true` for ∨ and ∧, the labels that cups, caps and rays attach to.
    pub fn is_oriented(self) -> bool {
        matches!(self, Label::Down | Label::Up)
    }

    /// Swaps ∨ and ∧, leaves ∘ and × alone.
    pub fn flipped(self) -> Label {
        match self {
            Label::Down => Label::Up,
            Label::Up => Label::Down,
            other => other,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A bounded weight. Vertices are indexed `0..len()` internally and `1..=len()`
/// in every text form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Weight {
    labels: Vec<Label>,
}

impl Weight {
    pub fn new(labels: Vec<Label>) -> Self {
        Weight { labels }
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub(crate) fn set(&mut self, i: usize, label: Label) {
        self.labels[i] = label;
    }

    pub fn count_down(&self) -> usize {
        self.labels.iter().filter(|&&l| l == Label::Down).count()
    }

    pub fn count_up(&self) -> usize {
        self.labels.iter().filter(|&&l| l == Label::Up).count()
    }

    /// Positions carrying ∨, ascending.
    pub fn down_positions(&self) -> Vec<usize> {
        self.positions(Label::Down)
    }

    /// Positions carrying ∨ or ∧, ascending.
    pub fn core_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i].is_oriented()).collect()
    }

    fn positions(&self, label: Label) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == label).collect()
    }

    /// `λ ~ μ`: same ∘/× pattern and the same number of ∨'s.
    pub fn same_block(&self, other: &Weight) -> bool {
        self.len() == other.len()
            && self.count_down() == other.count_down()
            && self
                .labels
                .iter()
                .zip(&other.labels)
                .all(|(a, b)| a.is_oriented() == b.is_oriented() && (a.is_oriented() || a == b))
    }

    /// Bruhat order `self ≤ other`.
    ///
    /// Uses the prefix characterisation: within a block, `λ ≤ μ` iff every
    /// prefix of `λ` has at least as many ∨'s as the same prefix of `μ`.
    pub fn bruhat_leq(&self, other: &Weight) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        if !self.same_block(other) {
            return Ok(false);
        }
        let mut balance = 0i64;
        for (a, b) in self.labels.iter().zip(&other.labels) {
            if *a == Label::Down {
                balance += 1;
            }
            if *b == Label::Down {
                balance -= 1;
            }
            if balance < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict Bruhat order.
    pub fn bruhat_lt(&self, other: &Weight) -> Result<bool> {
        Ok(self != other && self.bruhat_leq(other)?)
    }

    /// `λ*`: swap every ∨ and ∧.
    pub fn reversed_orientation(&self) -> Weight {
        Weight::new(self.labels.iter().map(|l| l.flipped()).collect())
    }

    /// `λ↶`: rotation through 180°, which reverses the vertex order and turns
    /// every ∨ into an ∧ and vice versa.
    pub fn rotated(&self) -> Weight {
        Weight::new(self.labels.iter().rev().map(|l| l.flipped()).collect())
    }

    /// Number of cups in the canonical cup diagram.
    pub fn defect(&self) -> usize {
        crate::diagram::cup_diagram_of(self).arc_count()
    }

    /// Key realising the canonical member order of a block: ∨-positions
    /// compared from the largest one down (colexicographic order).
    pub(crate) fn order_key(&self) -> Vec<usize> {
        let mut key = self.down_positions();
        key.reverse();
        key
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.count_down().cmp(&other.count_down()))
            .then_with(|| self.order_key().cmp(&other.order_key()))
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                Label::from_char(c).ok_or_else(|| Error::parse(i + 1, format!("unexpected character {c:?} in weight")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight::new)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Label> for Weight {
    fn from_iter<T: IntoIterator<Item = Label>>(iter: T) -> Self {
        Weight::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("v^").labels(), &[Label::Down, Label::Up]);
        assert_eq!(w("xov^").labels(), &[Label::Cross, Label::Nought, Label::Down, Label::Up]);
        assert_eq!(w("").len(), 0);
        match Weight::parse("v?^") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn bruhat_examples() {
        assert!(w("v^").bruhat_leq(&w("^v")).unwrap());
        assert!(!w("^v").bruhat_leq(&w("v^")).unwrap());
        assert!(w("vv^^").bruhat_leq(&w("^^vv")).unwrap());
        assert!(w("v^").bruhat_leq(&w("v^^")).is_err());
        assert!(!w("vo^").bruhat_leq(&w("^vo")).unwrap());
    }

    /// All weights reachable from `start` by moving a ∨ past an ∧ to its right.
    fn reachable(start: &Weight) -> HashSet<Weight> {
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..cur.len() {
                for j in i + 1..cur.len() {
                    if cur.label(i) == Label::Down && cur.label(j) == Label::Up {
                        let mut next = cur.clone();
                        next.set(i, Label::Up);
                        next.set(j, Label::Down);
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        seen
    }

    fn all_weights(n: usize) -> Vec<Weight> {
        let mut out = vec![Weight::default()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    Label::ALL.into_iter().map(move |l| {
                        let mut labels = w.labels().to_vec();
                        labels.push(l);
                        Weight::new(labels)
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn prefix_count_matches_swap_closure() {
        for n in 0..=5 {
            let weights = all_weights(n);
            for a in &weights {
                let up = reachable(a);
                for b in weights.iter().filter(|b| b.same_block(a)) {
                    assert_eq!(a.bruhat_leq(b).unwrap(), up.contains(b), "{a} <= {b}");
                }
            }
        }
    }

    #[test]
    fn involutions() {
        assert_eq!(w("v^").reversed_orientation(), w("^v"));
        assert_eq!(w("xov^").rotated(), w("v^ox"));
        // The worked rotation example: x o ∧ ∨ ∨ × ∧ ∘ ∨.
        assert_eq!(w("xo^vvx^ov").rotated(), w("^ovx^^vox"));
        for s in ["", "v", "xov^", "v^^vvx^ov"] {
            assert_eq!(w(s).rotated().rotated(), w(s));
            assert_eq!(w(s).reversed_orientation().reversed_orientation(), w(s));
        }
    }

    #[test]
    fn defect_examples() {
        assert_eq!(w("^v").defect(), 0);
        assert_eq!(w("v^").defect(), 1);
        assert_eq!(w("vv^^").defect(), 2);
    }
}
