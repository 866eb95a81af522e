//! Products of basis diagrams by iterated surgery on a stacked diagram.
//!
//! `(aλb)(cμd)` is zero unless `c = b*`. Otherwise `aλb` is drawn under
//! `b*μd`, matching rays of `b` and `b*` are fused into vertical segments, and
//! each symmetric cap/cup pair of the middle section is cut and re-stitched.
//! Orientations are then fixed by the circle rules
//!
//! ```text
//! 1⊗1 ↦ 1   1⊗x ↦ x   x⊗1 ↦ x   x⊗x ↦ 0      1 ↦ 1⊗x + x⊗1   x ↦ x⊗x
//! ```
//!
//! and, for components with rays, the line rules
//!
//! ```text
//! 1⊗y ↦ y   x⊗y ↦ 0   y ↦ x⊗y   y⊗y ↦ y⊗y or 0
//! ```
//!
//! where `y⊗y` survives only if one line has both rays ∧ and the other both ∨.
//! Labels at ray ends never change, so every line has a single admissible
//! orientation. Once the middle section is exhausted the two number lines are
//! identified.

use crate::basis::BasisDiagram;
use crate::coeff::Coefficient;
use crate::diagram::{CapDiagram, CupDiagram, End};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::weight::{Label, Weight};

const BOTTOM: usize = 0;
const BELOW: usize = 0;
const ABOVE: usize = 1;

/// How a node of the stacked diagram continues on one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    Free,
    Ray,
    /// Arc to the node at this position on the same number line.
    Arc(usize),
    /// Vertical segment to the node at the same position on the other line.
    Vertical,
}

/// Which rule a surgery step applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    MergeCircles,
    SplitCircle,
    MergeCircleLine,
    SplitLine,
    TwoLines,
}

/// Two oriented number lines joined by a symmetric middle section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedDiagram {
    bottom: CupDiagram,
    top: CapDiagram,
    n: usize,
    /// `links[node] = [below, above]`, with `node = level * n + position`.
    links: Vec<[Link; 2]>,
    labels: Vec<Label>,
}

struct Components {
    of: Vec<usize>,
    nodes: Vec<Vec<usize>>,
    line: Vec<bool>,
}

impl StackedDiagram {
    /// Stacks `x` under `y`, fusing matched rays. Requires `cap(x)* = cup(y)`.
    pub fn new(x: &BasisDiagram, y: &BasisDiagram) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
        }
        if &x.cap().mirror() != y.cup() {
            return Err(Error::Precondition(format!("{} is not the mirror of {}", y.cup(), x.cap())));
        }
        let n = x.len();
        let mut links = vec![[Link::Free; 2]; 2 * n];
        let mut labels = Vec::with_capacity(2 * n);
        labels.extend_from_slice(x.weight().labels());
        labels.extend_from_slice(y.weight().labels());
        for i in 0..n {
            let (below, middle, above) = (x.cup().end(i), x.cap().end(i), y.cap().end(i));
            if below == End::Free {
                continue;
            }
            let link = |e: End| match e {
                End::Arc(j) => Link::Arc(j),
                _ => Link::Ray,
            };
            let middle_link = match middle {
                End::Arc(j) => Link::Arc(j),
                _ => {
                    if labels[i] != labels[n + i] {
                        return Err(Error::ContractViolation(format!(
                            "stitched rays at vertex {} carry {} and {}",
                            i + 1,
                            labels[i],
                            labels[n + i]
                        )));
                    }
                    Link::Vertical
                }
            };
            links[i] = [link(below), middle_link];
            links[n + i] = [middle_link, link(above)];
        }
        Ok(StackedDiagram { bottom: x.cup().clone(), top: y.cap().clone(), n, links, labels })
    }

    /// Cap/cup pairs still present in the middle section, by left end.
    pub fn middle_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|i| match self.links[i][ABOVE] {
                Link::Arc(j) if j > i => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Middle pairs that can be cut now, i.e. not nested inside another one.
    pub fn admissible_pairs(&self) -> Vec<(usize, usize)> {
        let pairs = self.middle_pairs();
        pairs.iter().copied().filter(|&(i, j)| !pairs.iter().any(|&(k, l)| k < i && j < l)).collect()
    }

    pub fn is_final(&self) -> bool {
        self.middle_pairs().is_empty()
    }

    pub fn bottom_labels(&self) -> &[Label] {
        &self.labels[..self.n]
    }

    pub fn top_labels(&self) -> &[Label] {
        &self.labels[self.n..]
    }

    fn neighbour(&self, node: usize, side: usize) -> Option<(usize, bool)> {
        let (level, pos) = (node / self.n, node % self.n);
        match self.links[node][side] {
            Link::Arc(j) => Some((level * self.n + j, true)),
            Link::Vertical => Some((if level == BOTTOM { self.n + pos } else { pos }, false)),
            _ => None,
        }
    }

    fn is_ray_end(&self, node: usize) -> bool {
        let side = if node < self.n { BELOW } else { ABOVE };
        self.links[node][side] == Link::Ray
    }

    fn components(&self) -> Components {
        let mut of = vec![usize::MAX; 2 * self.n];
        let mut nodes = Vec::new();
        let mut line = Vec::new();
        for start in 0..2 * self.n {
            if of[start] != usize::MAX || self.links[start][BELOW] == Link::Free {
                continue;
            }
            let id = nodes.len();
            let mut members = vec![start];
            let mut has_ray = false;
            of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let node = members[k];
                k += 1;
                has_ray |= self.is_ray_end(node);
                for side in [BELOW, ABOVE] {
                    if let Some((next, _)) = self.neighbour(node, side) {
                        if of[next] == usize::MAX {
                            of[next] = id;
                            members.push(next);
                        }
                    }
                }
            }
            nodes.push(members);
            line.push(has_ray);
        }
        Components { of, nodes, line }
    }

    fn leftmost(&self, nodes: &[usize]) -> usize {
        *nodes.iter().min_by_key(|&&v| (v % self.n, v / self.n)).expect("non-empty component")
    }

    fn anticlockwise(&self, nodes: &[usize]) -> bool {
        self.labels[self.leftmost(nodes)] == Label::Down
    }

    /// Relabels a component starting from `start := label`: arcs swap ∨ and ∧,
    /// vertical segments keep them. Returns `false` on an inconsistency or if
    /// a ray end would change.
    fn orient_from(&mut self, start: usize, label: Label) -> bool {
        let mut fresh: Vec<Option<Label>> = vec![None; 2 * self.n];
        fresh[start] = Some(label);
        let mut stack = vec![start];
        while let Some(node) = stack.pop() {
            let here = fresh[node].expect("assigned");
            for side in [BELOW, ABOVE] {
                if let Some((next, flips)) = self.neighbour(node, side) {
                    let want = if flips { here.flipped() } else { here };
                    match fresh[next] {
                        None => {
                            fresh[next] = Some(want);
                            stack.push(next);
                        }
                        Some(l) if l != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        for (node, l) in fresh.into_iter().enumerate() {
            if let Some(l) = l {
                if self.is_ray_end(node) && self.labels[node] != l {
                    return false;
                }
                self.labels[node] = l;
            }
        }
        true
    }

    fn orient_circle(&mut self, nodes: &[usize], anticlockwise: bool) -> Result<()> {
        let start = self.leftmost(nodes);
        let label = if anticlockwise { Label::Down } else { Label::Up };
        if self.orient_from(start, label) {
            Ok(())
        } else {
            Err(Error::ContractViolation("circle admits no consistent orientation".into()))
        }
    }

    /// Orients a line from its ray ends; `false` if they disagree.
    fn orient_line(&mut self, nodes: &[usize]) -> bool {
        let start = *nodes.iter().find(|&&v| self.is_ray_end(v)).expect("line has a ray end");
        self.orient_from(start, self.labels[start])
    }

    fn ray_labels(&self, nodes: &[usize]) -> Vec<Label> {
        nodes.iter().filter(|&&v| self.is_ray_end(v)).map(|&v| self.labels[v]).collect()
    }

    /// Cuts the middle pair `(i, j)` and re-orients. Returns zero, one or two
    /// diagrams together with the rule used.
    pub fn surgery_step(&self, pair: (usize, usize)) -> Result<(Rule, Vec<StackedDiagram>)> {
        let (i, j) = pair;
        let n = self.n;
        if i >= j || j >= n || self.links[i][ABOVE] != Link::Arc(j) {
            return Err(Error::ContractViolation(format!("({},{}) is not a middle pair", i + 1, j + 1)));
        }
        if !self.admissible_pairs().contains(&pair) {
            return Err(Error::ContractViolation(format!("({},{}) is nested inside another pair", i + 1, j + 1)));
        }
        let before = self.components();
        let (a, b) = (before.of[i], before.of[n + i]);

        let mut cut = self.clone();
        for v in [i, j] {
            cut.links[v][ABOVE] = Link::Vertical;
            cut.links[n + v][BELOW] = Link::Vertical;
        }
        let after = cut.components();
        let (c1, c2) = (after.of[i], after.of[j]);

        let line_a = before.line[a];
        let line_b = before.line[b];
        if a == b {
            if c1 == c2 {
                return Err(Error::ContractViolation("cutting a component did not split it".into()));
            }
            let (n1, n2) = (&after.nodes[c1], &after.nodes[c2]);
            if !line_a {
                let outputs = if self.anticlockwise(&before.nodes[a]) {
                    let mut first = cut.clone();
                    first.orient_circle(n1, true)?;
                    first.orient_circle(n2, false)?;
                    let mut second = cut;
                    second.orient_circle(n1, false)?;
                    second.orient_circle(n2, true)?;
                    vec![first, second]
                } else {
                    cut.orient_circle(n1, false)?;
                    cut.orient_circle(n2, false)?;
                    vec![cut]
                };
                return Ok((Rule::SplitCircle, outputs));
            }
            let (line, circle) = if after.line[c1] { (n1, n2) } else { (n2, n1) };
            if after.line[c1] == after.line[c2] {
                return Err(Error::ContractViolation("a line split into two lines or two circles".into()));
            }
            cut.orient_circle(circle, false)?;
            if !cut.orient_line(line) {
                return Err(Error::ContractViolation("line admits no consistent orientation".into()));
            }
            return Ok((Rule::SplitLine, vec![cut]));
        }

        match (line_a, line_b) {
            (false, false) => {
                if c1 != c2 {
                    return Err(Error::ContractViolation("two circles did not merge".into()));
                }
                let (one_a, one_b) = (self.anticlockwise(&before.nodes[a]), self.anticlockwise(&before.nodes[b]));
                if !one_a && !one_b {
                    return Ok((Rule::MergeCircles, vec![]));
                }
                cut.orient_circle(&after.nodes[c1], one_a && one_b)?;
                Ok((Rule::MergeCircles, vec![cut]))
            }
            (true, false) | (false, true) => {
                let circle = if line_a { b } else { a };
                if !self.anticlockwise(&before.nodes[circle]) {
                    return Ok((Rule::MergeCircleLine, vec![]));
                }
                if !cut.orient_line(&after.nodes[c1]) {
                    return Err(Error::ContractViolation("line admits no consistent orientation".into()));
                }
                Ok((Rule::MergeCircleLine, vec![cut]))
            }
            (true, true) => {
                let rays_a = self.ray_labels(&before.nodes[a]);
                let rays_b = self.ray_labels(&before.nodes[b]);
                let all = |rays: &[Label], l: Label| rays.iter().all(|&r| r == l);
                let survives = (all(&rays_a, Label::Up) && all(&rays_b, Label::Down))
                    || (all(&rays_a, Label::Down) && all(&rays_b, Label::Up));
                if !survives {
                    return Ok((Rule::TwoLines, vec![]));
                }
                if c1 == c2 || !after.line[c1] || !after.line[c2] {
                    return Err(Error::ContractViolation("two lines did not become two lines".into()));
                }
                if !cut.orient_line(&after.nodes[c1]) || !cut.orient_line(&after.nodes[c2]) {
                    return Err(Error::ContractViolation("line admits no consistent orientation".into()));
                }
                Ok((Rule::TwoLines, vec![cut]))
            }
        }
    }

    /// Identifies the two number lines of a diagram without middle pairs.
    pub fn collapse(&self) -> Result<BasisDiagram> {
        if !self.is_final() {
            return Err(Error::ContractViolation("middle section still has cap/cup pairs".into()));
        }
        if self.bottom_labels() != self.top_labels() {
            return Err(Error::ContractViolation("vertical segments join unequal labels".into()));
        }
        BasisDiagram::new(self.bottom.clone(), Weight::new(self.bottom_labels().to_vec()), self.top.clone())
    }
}

/// Rule firings observed during a product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurgeryTrace {
    pub steps: usize,
    pub merge_circles: usize,
    pub split_circle: usize,
    pub merge_circle_line: usize,
    pub split_line: usize,
    pub two_lines: usize,
    /// Two-lines surgeries whose result was not zero.
    pub two_lines_kept: usize,
}

impl SurgeryTrace {
    fn record(&mut self, rule: Rule, kept: bool) {
        self.steps += 1;
        if rule == Rule::TwoLines && kept {
            self.two_lines_kept += 1;
        }
        match rule {
            Rule::MergeCircles => self.merge_circles += 1,
            Rule::SplitCircle => self.split_circle += 1,
            Rule::MergeCircleLine => self.merge_circle_line += 1,
            Rule::SplitLine => self.split_line += 1,
            Rule::TwoLines => self.two_lines += 1,
        }
    }
}

fn check_pair(x: &BasisDiagram, y: &BasisDiagram) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if !x.weight().same_block(y.weight()) {
        return Err(Error::BlockMismatch(x.weight().to_string(), y.weight().to_string()));
    }
    Ok(&x.cap().mirror() == y.cup())
}

fn run<C: Coefficient>(
    x: &BasisDiagram,
    y: &BasisDiagram,
    trace: &mut SurgeryTrace,
    mut choose: impl FnMut(&[(usize, usize)]) -> (usize, usize),
) -> Result<Element<C>> {
    if !check_pair(x, y)? {
        return Ok(Element::zero());
    }
    let start = StackedDiagram::new(x, y)?;
    let mut layer = vec![start];
    loop {
        let admissible = layer[0].admissible_pairs();
        if admissible.is_empty() {
            break;
        }
        // All diagrams in a layer share their middle section.
        let pair = choose(&admissible);
        let mut next = Vec::new();
        for s in &layer {
            let (rule, out) = s.surgery_step(pair)?;
            trace.record(rule, !out.is_empty());
            next.extend(out);
        }
        if next.is_empty() {
            return Ok(Element::zero());
        }
        layer = next;
    }
    let mut out = Element::zero();
    for s in layer {
        out.add_term(s.collapse()?, C::one())?;
    }
    Ok(out)
}

/// `xy` by generalised surgery, cutting pairs in ascending order of their
/// left ends.
pub fn multiply_generalized<C: Coefficient>(x: &BasisDiagram, y: &BasisDiagram) -> Result<Element<C>> {
    run(x, y, &mut SurgeryTrace::default(), |p| p[0])
}

/// As [`multiply_generalized`], also reporting which rules fired.
pub fn multiply_traced<C: Coefficient>(x: &BasisDiagram, y: &BasisDiagram) -> Result<(Element<C>, SurgeryTrace)> {
    let mut trace = SurgeryTrace::default();
    let out = run(x, y, &mut trace, |p| p[0])?;
    Ok((out, trace))
}

/// `xy` cutting the middle pairs in the given order.
pub fn multiply_in_order<C: Coefficient>(
    x: &BasisDiagram,
    y: &BasisDiagram,
    order: &[(usize, usize)],
) -> Result<Element<C>> {
    let mut k = 0;
    let mut bad = None;
    let out = run(x, y, &mut SurgeryTrace::default(), |admissible| {
        let pair = order.get(k).copied().unwrap_or((usize::MAX, usize::MAX));
        k += 1;
        if !admissible.contains(&pair) {
            bad.get_or_insert(pair);
            return admissible[0];
        }
        pair
    })?;
    match bad {
        Some(p) => Err(Error::Precondition(format!("pair {p:?} is not admissible at its turn"))),
        None => Ok(out),
    }
}

/// Every order in which the arcs of `b` can be cut: outer arcs before the
/// arcs nested inside them.
pub fn admissible_orders(b: &CapDiagram) -> Vec<Vec<(usize, usize)>> {
    fn go(remaining: &[(usize, usize)], prefix: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for (idx, &(i, j)) in remaining.iter().enumerate() {
            if remaining.iter().any(|&(k, l)| k < i && j < l) {
                continue;
            }
            let rest: Vec<_> = remaining.iter().enumerate().filter(|&(t, _)| t != idx).map(|(_, &p)| p).collect();
            prefix.push((i, j));
            go(&rest, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&b.arcs(), &mut Vec::new(), &mut out);
    out
}

/// Khovanov's product of closed diagrams.
pub fn multiply_closed<C: Coefficient>(x: &BasisDiagram, y: &BasisDiagram) -> Result<Element<C>> {
    if !x.is_closed() || !y.is_closed() {
        return Err(Error::Precondition("multiply_closed needs diagrams without rays".into()));
    }
    multiply_generalized(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> BasisDiagram {
        s.parse().unwrap()
    }

    fn mul(x: &str, y: &str) -> String {
        multiply_generalized::<i64>(&d(x), &d(y)).unwrap().to_string()
    }

    #[test]
    fn dual_numbers() {
        let e = "(1,2)|v^|(1,2)";
        let x = "(1,2)|^v|(1,2)";
        assert_eq!(mul(e, e), format!("+1·({e})"));
        assert_eq!(mul(e, x), format!("+1·({x})"));
        assert_eq!(mul(x, e), format!("+1·({x})"));
        assert_eq!(mul(x, x), "0");
    }

    #[test]
    fn two_by_two_closed_product() {
        let out = multiply_closed::<i64>(&d("(1,4);(2,3)|v^v^|(1,2);(3,4)"), &d("(1,2);(3,4)|v^v^|(1,4);(2,3)")).unwrap();
        assert_eq!(
            out.to_string(),
            "+1·((1,4);(2,3)|v^v^|(1,4);(2,3)) +1·((1,4);(2,3)|^v^v|(1,4);(2,3))"
        );
    }

    #[test]
    fn six_vertex_product() {
        assert_eq!(
            mul("(4,5);(3,6)|^v^v^v|(2,3);(4,5)", "(2,3);(4,5)|^v^^vv|(1,2)"),
            "+1·((3,6);(4,5)|^v^^vv|(1,2))"
        );
    }

    #[test]
    fn mismatched_middle_is_zero() {
        assert_eq!(mul("(1,2)|^v|", "(1,2)|^v|"), "0");
        assert!(multiply_generalized::<i64>(&d("(1,2)|^v|"), &d("|^^|")).is_err());
    }

    #[test]
    fn split_gives_two_terms() {
        let s = StackedDiagram::new(&d("(1,2)|v^|(1,2)"), &d("(1,2)|v^|(1,2)")).unwrap();
        assert_eq!(s.middle_pairs(), vec![(0, 1)]);
        let (rule, out) = s.surgery_step((0, 1)).unwrap();
        assert_eq!(rule, Rule::MergeCircles);
        assert_eq!(out.len(), 1);

        let x = d("(1,2);(3,4)|v^v^|(1,4);(2,3)");
        let y = d("(1,4);(2,3)|v^v^|(1,2);(3,4)");
        let s = StackedDiagram::new(&x, &y).unwrap();
        let (rule, out) = s.surgery_step((0, 3)).unwrap();
        assert_eq!(rule, Rule::MergeCircles);
        let (rule, out) = out[0].surgery_step((1, 2)).unwrap();
        assert_eq!(rule, Rule::SplitCircle);
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|s| s.is_final() && s.collapse().is_ok()));
    }

    #[test]
    fn nested_pairs_are_not_admissible() {
        let x = d("(1,4);(2,3)|v^v^|(1,4);(2,3)");
        let s = StackedDiagram::new(&x, &x).unwrap();
        assert_eq!(s.admissible_pairs(), vec![(0, 3)]);
        assert!(s.surgery_step((1, 2)).is_err());
        assert_eq!(admissible_orders(x.cap()).len(), 1);
        let y = d("(1,2);(3,4)|v^v^|(1,2);(3,4)");
        assert_eq!(admissible_orders(y.cap()).len(), 2);
        let a: Element<i64> = multiply_in_order(&y, &y, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(a, multiply_generalized(&y, &y).unwrap());
        assert!(multiply_in_order::<i64>(&x, &x, &[(1, 2), (0, 3)]).is_err());
    }
}
