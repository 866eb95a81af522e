//! Cup and cap diagrams, orientations and degrees.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::weight::{Label, Weight};

/// What sits at one vertex of a cup or cap diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Free,
    Ray,
    /// End of an arc; the payload is the other end.
    Arc(usize),
}

/// Side of the number line an [`ArcDiagram`] lives on.
pub trait Polarity: Copy + Clone + fmt::Debug + Default + Send + Sync + 'static {
    type Mirror: Polarity<Mirror = Self>;
    const NAME: &'static str;
}

/// Arcs below the line, rays pointing down.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cup;

/// Arcs above the line, rays pointing up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cap;

impl Polarity for Cup {
    type Mirror = Cap;
    const NAME: &'static str = "cup";
}

impl Polarity for Cap {
    type Mirror = Cup;
    const NAME: &'static str = "cap";
}

/// A non-crossing partial matching of the vertices of a number line, with
/// rays on the unmatched oriented vertices and free vertices elsewhere.
pub struct ArcDiagram<P: Polarity> {
    ends: Vec<End>,
    _side: PhantomData<P>,
}

pub type CupDiagram = ArcDiagram<Cup>;
pub type CapDiagram = ArcDiagram<Cap>;

impl<P: Polarity> Clone for ArcDiagram<P> {
    fn clone(&self) -> Self {
        ArcDiagram { ends: self.ends.clone(), _side: PhantomData }
    }
}

impl<P: Polarity> PartialEq for ArcDiagram<P> {
    fn eq(&self, other: &Self) -> bool {
        self.ends == other.ends
    }
}

impl<P: Polarity> Eq for ArcDiagram<P> {}

impl<P: Polarity> Hash for ArcDiagram<P> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ends.hash(state)
    }
}

impl<P: Polarity> Ord for ArcDiagram<P> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.arcs().cmp(&other.arcs()))
    }
}

impl<P: Polarity> PartialOrd for ArcDiagram<P> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<P: Polarity> fmt::Debug for ArcDiagram<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", P::NAME, self)
    }
}

/// Arcs in the text grammar: `(i,j);(k,l)`, 1-based, sorted by left end.
impl<P: Polarity> fmt::Display for ArcDiagram<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs().iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl<P: Polarity> ArcDiagram<P> {
    /// Builds a diagram from its per-vertex ends, checking every invariant.
    pub fn from_ends(ends: Vec<End>) -> Result<Self> {
        let n = ends.len();
        for (i, e) in ends.iter().enumerate() {
            if let End::Arc(j) = *e {
                if j >= n || j == i || ends[j] != End::Arc(i) {
                    return Err(Error::InvalidDiagram(format!("arc end at {} is not paired symmetrically", i + 1)));
                }
            }
        }
        let d = ArcDiagram { ends, _side: PhantomData };
        let arcs = d.arcs();
        for &(i, j) in &arcs {
            for &(k, l) in &arcs {
                if i < k && k < j && j < l {
                    return Err(Error::InvalidDiagram(format!(
                        "arcs ({},{}) and ({},{}) cross",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1
                    )));
                }
            }
            if let Some(k) = (i + 1..j).find(|&k| d.ends[k] == End::Ray) {
                return Err(Error::InvalidDiagram(format!(
                    "ray at {} lies under the arc ({},{})",
                    k + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(d)
    }

    /// Builds a diagram from 0-based arcs on the number line of `weight`:
    /// ∘/× vertices are free, unmatched ∨/∧ vertices carry rays.
    pub fn from_arcs(arcs: &[(usize, usize)], weight: &Weight) -> Result<Self> {
        let n = weight.len();
        let mut ends: Vec<End> =
            weight.labels().iter().map(|l| if l.is_oriented() { End::Ray } else { End::Free }).collect();
        for &(a, b) in arcs {
            let (i, j) = (a.min(b), a.max(b));
            if j >= n || i == j {
                return Err(Error::InvalidDiagram(format!("arc ({},{}) out of range", a + 1, b + 1)));
            }
            for v in [i, j] {
                match ends[v] {
                    End::Free => {
                        return Err(Error::InvalidDiagram(format!("arc ends at free vertex {}", v + 1)));
                    }
                    End::Arc(_) => {
                        return Err(Error::InvalidDiagram(format!("vertex {} is used by two arcs", v + 1)));
                    }
                    End::Ray => {}
                }
            }
            ends[i] = End::Arc(j);
            ends[j] = End::Arc(i);
        }
        Self::from_ends(ends)
    }

    /// Parses `(i,j);(k,l)` (1-based) against the number line of `weight`.
    pub fn parse(text: &str, weight: &Weight) -> Result<Self> {
        Self::from_arcs(&parse_arcs(text)?, weight)
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    pub fn end(&self, i: usize) -> End {
        self.ends[i]
    }

    /// Arcs as 0-based `(left, right)` pairs sorted by left end.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match *e {
                End::Arc(j) if i < j => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.ends.iter().filter(|e| matches!(e, End::Arc(_))).count() / 2
    }

    pub fn rays(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.ends[i] == End::Ray).collect()
    }

    pub fn is_closed(&self) -> bool {
        !self.ends.contains(&End::Ray)
    }

    pub fn free_positions_match<Q: Polarity>(&self, other: &ArcDiagram<Q>) -> bool {
        self.len() == other.len()
            && self.ends.iter().zip(&other.ends).all(|(a, b)| (*a == End::Free) == (*b == End::Free))
    }

    /// `c*`: reflection in the number line.
    pub fn mirror(&self) -> ArcDiagram<P::Mirror> {
        ArcDiagram { ends: self.ends.clone(), _side: PhantomData }
    }

    /// `c↶`: rotation through 180°, which also swaps cups and caps.
    pub fn rotated(&self) -> ArcDiagram<P::Mirror> {
        let n = self.len();
        let ends = self
            .ends
            .iter()
            .rev()
            .map(|e| match *e {
                End::Arc(j) => End::Arc(n - 1 - j),
                other => other,
            })
            .collect();
        ArcDiagram { ends, _side: PhantomData }
    }

    /// Whether gluing this diagram to `weight` yields an oriented cup (or cap)
    /// diagram.
    pub fn is_oriented(&self, weight: &Weight) -> bool {
        if weight.len() != self.len() {
            return false;
        }
        let mut seen_down_ray = false;
        for (i, e) in self.ends.iter().enumerate() {
            let l = weight.label(i);
            match *e {
                End::Free => {
                    if l.is_oriented() {
                        return false;
                    }
                }
                End::Arc(j) => {
                    if !l.is_oriented() || !weight.label(j).is_oriented() || l == weight.label(j) {
                        return false;
                    }
                }
                End::Ray => match l {
                    Label::Down => seen_down_ray = true,
                    Label::Up if seen_down_ray => return false,
                    Label::Up => {}
                    _ => return false,
                },
            }
        }
        true
    }

    /// Number of clockwise arcs (left end labelled ∧). Assumes `weight`
    /// orients the diagram.
    pub fn degree(&self, weight: &Weight) -> usize {
        self.arcs().iter().filter(|&&(i, _)| weight.label(i) == Label::Up).count()
    }

    /// The weight obtained from `weight` by reversing both ends of every
    /// clockwise arc. If `weight` orients this diagram, the result `α`
    /// satisfies `underline(α) = self`.
    pub fn anticlockwise_weight(&self, weight: &Weight) -> Weight {
        let mut out = weight.clone();
        for (i, j) in self.arcs() {
            if weight.label(i) == Label::Up {
                out.set(i, Label::Down);
                out.set(j, Label::Up);
            }
        }
        out
    }

    /// The unique weight `α` in the block of `template` whose canonical
    /// diagram is this one: arcs anticlockwise, rays ∧ then ∨.
    pub fn canonical_weight(&self, template: &Weight) -> Result<Weight> {
        if template.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: template.len() });
        }
        let rays = self.rays();
        let arcs = self.arcs();
        let down_rays = template
            .count_down()
            .checked_sub(arcs.len())
            .filter(|&d| d <= rays.len())
            .ok_or_else(|| Error::InvalidDiagram(format!("{self} does not fit the block of {template}")))?;
        let mut out = template.clone();
        for (i, e) in self.ends.iter().enumerate() {
            if *e == End::Free && template.label(i).is_oriented() {
                return Err(Error::InvalidDiagram(format!("free vertex {} carries an orientation", i + 1)));
            }
        }
        for (i, j) in arcs {
            out.set(i, Label::Down);
            out.set(j, Label::Up);
        }
        let up_rays = rays.len() - down_rays;
        for (k, &r) in rays.iter().enumerate() {
            out.set(r, if k < up_rays { Label::Up } else { Label::Down });
        }
        Ok(out)
    }
}

/// Parses the arc list grammar into 0-based pairs.
pub fn parse_arcs(text: &str) -> Result<Vec<(usize, usize)>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in trimmed.split(';') {
        let p = part.trim();
        let inner = p
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(offset + 1, format!("expected (i,j), found {p:?}")))?;
        let mut nums = inner.split(',');
        let mut next = || -> Result<usize> {
            let tok = nums.next().ok_or_else(|| Error::parse(offset + 1, "missing arc end"))?;
            let v: usize =
                tok.trim().parse().map_err(|_| Error::parse(offset + 1, format!("bad vertex index {tok:?}")))?;
            v.checked_sub(1).ok_or_else(|| Error::parse(offset + 1, "vertices are numbered from 1"))
        };
        let a = next()?;
        let b = next()?;
        if nums.next().is_some() {
            return Err(Error::parse(offset + 1, "arc with more than two ends"));
        }
        out.push((a, b));
        offset += part.len() + 1;
    }
    Ok(out)
}

/// The cup diagram `underline(λ)`: the unique cup diagram orienting `λ` in
/// degree zero.
///
/// Scans left to right joining each ∧ to the nearest unmatched ∨ on its left,
/// which is the same as repeatedly cupping neighbouring ∨∧ pairs.
pub fn cup_diagram_of(weight: &Weight) -> CupDiagram {
    let mut ends: Vec<End> =
        weight.labels().iter().map(|l| if l.is_oriented() { End::Ray } else { End::Free }).collect();
    let mut open = Vec::new();
    for (i, l) in weight.labels().iter().enumerate() {
        match l {
            Label::Down => open.push(i),
            Label::Up => {
                if let Some(j) = open.pop() {
                    ends[i] = End::Arc(j);
                    ends[j] = End::Arc(i);
                }
            }
            _ => {}
        }
    }
    ArcDiagram { ends, _side: PhantomData }
}

/// The cap diagram `overline(λ) = underline(λ)*`.
pub fn cap_diagram_of(weight: &Weight) -> CapDiagram {
    cup_diagram_of(weight).mirror()
}

/// `μ ⊂ λ`: `μ ~ λ` and `underline(μ) λ` is oriented.
pub fn subset_rel(mu: &Weight, lambda: &Weight) -> Result<bool> {
    if mu.len() != lambda.len() {
        return Err(Error::LengthMismatch { left: mu.len(), right: lambda.len() });
    }
    Ok(mu.same_block(lambda) && cup_diagram_of(mu).is_oriented(lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    Circle,
    Line,
}

/// A connected component of a circle diagram `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// Vertices in traversal order: from a ray end for lines, from the
    /// leftmost vertex for circles.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn leftmost(&self) -> usize {
        *self.vertices.iter().min().expect("non-empty component")
    }

    /// A circle is anticlockwise iff its leftmost vertex carries ∨.
    pub fn is_anticlockwise(&self, weight: &Weight) -> bool {
        weight.label(self.leftmost()) == Label::Down
    }
}

/// Splits the circle diagram `ab` into circles and lines.
pub fn components(cup: &CupDiagram, cap: &CapDiagram) -> Result<Vec<Component>> {
    if !cup.free_positions_match(cap) {
        return Err(Error::InvalidDiagram(format!("free vertices of {cup} and {cap} differ")));
    }
    let n = cup.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();

    // Walks alternately along cup and cap arcs starting at `start`, leaving via
    // the cup side first if `cup_first`.
    let walk = |start: usize, cup_first: bool, seen: &mut Vec<bool>| -> Vec<usize> {
        let mut path = vec![start];
        seen[start] = true;
        let mut cur = start;
        let mut use_cup = cup_first;
        loop {
            let e = if use_cup { cup.end(cur) } else { cap.end(cur) };
            match e {
                End::Arc(j) if !seen[j] => {
                    seen[j] = true;
                    path.push(j);
                    cur = j;
                    use_cup = !use_cup;
                }
                _ => return path,
            }
        }
    };

    for start in 0..n {
        if seen[start] || cup.end(start) == End::Free {
            continue;
        }
        let ray_start = cup.end(start) == End::Ray || cap.end(start) == End::Ray;
        if ray_start {
            let cup_first = cap.end(start) == End::Ray;
            let vertices = walk(start, cup_first, &mut seen);
            out.push(Component { kind: ComponentKind::Line, vertices });
        }
    }
    for start in 0..n {
        if seen[start] || cup.end(start) == End::Free {
            continue;
        }
        let vertices = walk(start, true, &mut seen);
        out.push(Component { kind: ComponentKind::Circle, vertices });
    }
    Ok(out)
}
