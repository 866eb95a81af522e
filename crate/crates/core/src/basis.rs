//! Oriented circle diagrams `(aλb)`, the basis vectors of every algebra here.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{cap_diagram_of, components, cup_diagram_of, CapDiagram, Component, ComponentKind, CupDiagram};
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisDiagram {
    cup: CupDiagram,
    weight: Weight,
    cap: CapDiagram,
    degree: usize,
}

impl BasisDiagram {
    pub fn new(cup: CupDiagram, weight: Weight, cap: CapDiagram) -> Result<Self> {
        if cup.len() != weight.len() || cap.len() != weight.len() {
            return Err(Error::LengthMismatch { left: cup.len().max(cap.len()), right: weight.len() });
        }
        if !cup.is_oriented(&weight) {
            return Err(Error::InvalidDiagram(format!("{cup} is not oriented by {weight}")));
        }
        if !cap.is_oriented(&weight) {
            return Err(Error::InvalidDiagram(format!("{cap} is not oriented by {weight}")));
        }
        let degree = cup.degree(&weight) + cap.degree(&weight);
        Ok(BasisDiagram { cup, weight, cap, degree })
    }

    /// `e_λ = (underline(λ) λ overline(λ))`.
    pub fn idempotent(weight: &Weight) -> Self {
        Self::new(cup_diagram_of(weight), weight.clone(), cap_diagram_of(weight)).expect("canonical diagrams orient")
    }

    /// `(underline(α) λ overline(β))`, if oriented.
    pub fn from_weights(alpha: &Weight, lambda: &Weight, beta: &Weight) -> Result<Self> {
        Self::new(cup_diagram_of(alpha), lambda.clone(), cap_diagram_of(beta))
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn cup(&self) -> &CupDiagram {
        &self.cup
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn cap(&self) -> &CapDiagram {
        &self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weight.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weight.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.cup.is_closed() && self.cap.is_closed()
    }

    /// `α` with `underline(α) = a` and `α ⊂ λ`.
    pub fn cup_weight(&self) -> Weight {
        self.cup.anticlockwise_weight(&self.weight)
    }

    /// `β` with `overline(β) = b` and `λ ⊃ β`.
    pub fn cap_weight(&self) -> Weight {
        self.cap.anticlockwise_weight(&self.weight)
    }

    pub fn components(&self) -> Vec<Component> {
        components(&self.cup, &self.cap).expect("validated diagram")
    }

    /// Degree recomputed one component at a time: an anticlockwise circle
    /// contributes `#caps - 1`, a clockwise one `#caps + 1`, and a line its
    /// clockwise cups and caps.
    pub fn degree_by_components(&self) -> usize {
        let lam = &self.weight;
        self.components()
            .iter()
            .map(|c| {
                let caps = c
                    .vertices
                    .iter()
                    .filter(|&&v| matches!(self.cap.end(v), crate::diagram::End::Arc(j) if j > v))
                    .count();
                match c.kind {
                    ComponentKind::Circle if c.is_anticlockwise(lam) => caps - 1,
                    ComponentKind::Circle => caps + 1,
                    ComponentKind::Line => {
                        let clockwise = |v: usize, e: crate::diagram::End| {
                            matches!(e, crate::diagram::End::Arc(j) if j > v)
                                && lam.label(v) == crate::weight::Label::Up
                        };
                        c.vertices.iter().filter(|&&v| clockwise(v, self.cup.end(v))).count()
                            + c.vertices.iter().filter(|&&v| clockwise(v, self.cap.end(v))).count()
                    }
                }
            })
            .sum()
    }

    /// `(aλb)* = (b* λ a*)`.
    pub fn star(&self) -> BasisDiagram {
        BasisDiagram {
            cup: self.cap.mirror(),
            weight: self.weight.clone(),
            cap: self.cup.mirror(),
            degree: self.degree,
        }
    }

    /// `(aλb)↶ = (b↶ λ↶ a↶)`.
    pub fn rotated(&self) -> BasisDiagram {
        BasisDiagram::new(self.cap.rotated(), self.weight.rotated(), self.cup.rotated())
            .expect("rotation preserves orientation")
    }
}

impl Ord for BasisDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.cup.cmp(&other.cup))
            .then_with(|| self.cap.cmp(&other.cap))
    }
}

impl PartialOrd for BasisDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.cup, self.weight, self.cap)
    }
}

/// Parses `arcs|weight|arcs`, e.g. `(1,4);(2,3)|v^v^|(1,2);(3,4)`.
impl FromStr for BasisDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split('|').collect();
        if parts.len() != 3 {
            return Err(Error::parse(1, format!("expected arcs|weight|arcs, found {text:?}")));
        }
        let weight: Weight = parts[1].trim().parse().map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse { position: parts[0].len() + 1 + position, message },
            other => other,
        })?;
        let cup = CupDiagram::parse(parts[0], &weight)?;
        let cap = CapDiagram::parse(parts[2], &weight)?;
        BasisDiagram::new(cup, weight, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> BasisDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = d("(1,4);(2,3)|v^v^|(1,2);(3,4)");
        assert_eq!(x.to_string(), "(1,4);(2,3)|v^v^|(1,2);(3,4)");
        assert_eq!(d("(4,5);(3,6)|^v^v^v|(2,3);(4,5)").to_string(), "(3,6);(4,5)|^v^v^v|(2,3);(4,5)");
        assert_eq!(d("|^v|(1,2)").to_string(), "|^v|(1,2)");
        assert!(BasisDiagram::parse("(1,2)|vv|").is_err());
        assert!(BasisDiagram::parse("|v^|").is_err()); // rays labelled ∨ then ∧
        assert!(BasisDiagram::parse("(1,2)|v^").is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(d("(1,2)|v^|(1,2)").degree(), 0);
        assert_eq!(d("(1,2)|^v|(1,2)").degree(), 2);
        assert_eq!(d("(1,2)|^v|").degree(), 1);
        for s in ["(1,2)|v^|(1,2)", "(1,2)|^v|(1,2)", "(1,4);(2,3)|v^v^|(1,2);(3,4)"] {
            assert_eq!(d(s).degree(), d(s).degree_by_components());
        }
    }

    #[test]
    fn star_and_rotation() {
        let b = d("(1,2)|^v|");
        assert_eq!(b.star(), d("|^v|(1,2)"));
        assert_eq!(b.star().star(), b);
        let x = d("(1,4);(2,3)|v^v^|(1,2);(3,4)");
        assert_eq!(x.rotated().rotated(), x);
        assert_eq!(x.rotated().degree(), x.degree());
    }
}
