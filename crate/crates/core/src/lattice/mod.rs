//! Bounded lattices with a negation map.
//!
//! Elements are named uniformly as [`Element::Bot`], [`Element::Top`] and
//! [`Element::Mid`]`(k)`. The flat lattices `Mn` use `Mid(1)..Mid(n)` for
//! their middle level; the ad-hoc lattices reuse reserved `Mid` indices:
//!
//! | lattice   | Mid(1) | Mid(2) | Mid(3) |
//! |-----------|--------|--------|--------|
//! | `m2`      | B      | N      |        |
//! | `m3`      | B      | 0      | N      |
//! | `n5`      | x      | y      | z      |
//! | `ladder5` | a      | b      | c      |
//!
//! `Top` prints as `T` and `Bot` as `F` for `m2` and `m3`.

mod conditions;
mod info;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use conditions::{check_like_conditions, ConditionResult, LikeReport};
pub use info::LatticeInfo;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Bot,
    Mid(u32),
    Top,
}

impl Element {
    pub fn is_middle(self) -> bool {
        matches!(self, Element::Mid(_))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Bot => f.write_str("Bot"),
            Element::Top => f.write_str("Top"),
            Element::Mid(k) => write!(f, "Mid-{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Mn needs at least one middle element")]
    EmptyMiddle,
    #[error("element {element} is not in the carrier of {lattice}")]
    UnknownElement { lattice: String, element: String },
    #[error("lattice {0} has no negation installed")]
    NoNegation(String),
    #[error("lattice {0} has a symbolic carrier; this operation needs a finite one")]
    Symbolic(String),
    #[error("unknown lattice id `{0}` (expected m<n>, momega, n5 or ladder5)")]
    UnknownId(String),
    #[error("order on {0} is not a bounded lattice")]
    NotALattice(String),
}

/// Number of pairwise incomparable middle values available to a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Capacity {
    Finite(u32),
    Omega,
}

impl Capacity {
    pub fn admits(self, colors: usize) -> bool {
        match self {
            Capacity::Finite(n) => colors <= n as usize,
            Capacity::Omega => true,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(n) => write!(f, "{n}"),
            Capacity::Omega => f.write_str("omega"),
        }
    }
}

/// Lookup tables for a finite lattice, indexed by carrier position.
#[derive(Clone, Debug)]
pub struct Table {
    pub elements: Vec<Element>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub neg: Option<Vec<usize>>,
}

impl Table {
    fn from_order(id: &str, elements: Vec<Element>, strict: &[(Element, Element)]) -> Result<Self, LatticeError> {
        let size = elements.len();
        let pos = |e: Element| elements.iter().position(|&x| x == e).expect("order mentions carrier elements");
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in strict {
            leq[pos(a)][pos(b)] = true;
        }
        // transitive closure
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let bound = |upper: bool, a: usize, b: usize| -> Option<usize> {
            let rel = |x: usize, y: usize| if upper { leq[x][y] } else { leq[y][x] };
            let candidates: Vec<usize> = (0..size).filter(|&c| rel(a, c) && rel(b, c)).collect();
            candidates
                .iter()
                .copied()
                .find(|&c| candidates.iter().all(|&d| rel(c, d)))
        };
        let mut meet = vec![vec![0; size]; size];
        let mut join = vec![vec![0; size]; size];
        for a in 0..size {
            for b in 0..size {
                meet[a][b] = bound(false, a, b).ok_or_else(|| LatticeError::NotALattice(id.into()))?;
                join[a][b] = bound(true, a, b).ok_or_else(|| LatticeError::NotALattice(id.into()))?;
            }
        }
        Ok(Table {
            elements,
            leq,
            meet,
            join,
            neg: None,
        })
    }

    pub fn index(&self, e: Element) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Finite(Table),
    Omega,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    id: String,
    repr: Repr,
    names: Vec<(Element, &'static str)>,
    flat: bool,
}

impl Lattice {
    /// The flat lattice with `n` pairwise incomparable middle elements and
    /// the negation swapping `Top`/`Bot` and fixing every middle element.
    pub fn mn(n: u32) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::EmptyMiddle);
        }
        let id = format!("m{n}");
        let mut elements = vec![Element::Bot];
        elements.extend((1..=n).map(Element::Mid));
        elements.push(Element::Top);
        let mut strict = Vec::new();
        for k in 1..=n {
            strict.push((Element::Bot, Element::Mid(k)));
            strict.push((Element::Mid(k), Element::Top));
        }
        let mut table = Table::from_order(&id, elements, &strict)?;
        let last = table.elements.len() - 1;
        table.neg = Some(
            (0..table.elements.len())
                .map(|i| if i == 0 { last } else if i == last { 0 } else { i })
                .collect(),
        );
        let names = match n {
            2 => vec![(Element::Top, "T"), (Element::Mid(1), "B"), (Element::Mid(2), "N"), (Element::Bot, "F")],
            3 => vec![
                (Element::Top, "T"),
                (Element::Mid(1), "B"),
                (Element::Mid(2), "0"),
                (Element::Mid(3), "N"),
                (Element::Bot, "F"),
            ],
            _ => Vec::new(),
        };
        Ok(Lattice {
            id,
            repr: Repr::Finite(table),
            names,
            flat: true,
        })
    }

    /// The flat lattice with countably many middle elements, computed
    /// symbolically.
    pub fn m_omega() -> Self {
        Lattice {
            id: "momega".into(),
            repr: Repr::Omega,
            names: Vec::new(),
            flat: true,
        }
    }

    /// The pentagon: `Bot < z < y < Top`, `Bot < x < Top`, with the unique
    /// De Morgan involution `x -> x`, `y <-> z`.
    pub fn n5() -> Self {
        let (x, y, z) = (Element::Mid(1), Element::Mid(2), Element::Mid(3));
        let elements = vec![Element::Bot, x, y, z, Element::Top];
        let strict = [
            (Element::Bot, x),
            (Element::Bot, z),
            (z, y),
            (x, Element::Top),
            (y, Element::Top),
        ];
        let mut table = Table::from_order("n5", elements, &strict).expect("n5 is a lattice");
        // carrier order: Bot, x, y, z, Top
        table.neg = Some(vec![4, 1, 3, 2, 0]);
        Lattice {
            id: "n5".into(),
            repr: Repr::Finite(table),
            names: vec![(x, "x"), (y, "y"), (z, "z")],
            flat: false,
        }
    }

    /// `Bot < b, c < a < Top` with `b`, `c` incomparable. No negation is
    /// installed: none satisfies De Morgan and double negation together.
    pub fn ladder5() -> Self {
        let (a, b, c) = (Element::Mid(1), Element::Mid(2), Element::Mid(3));
        let elements = vec![Element::Bot, a, b, c, Element::Top];
        let strict = [(Element::Bot, b), (Element::Bot, c), (b, a), (c, a), (a, Element::Top)];
        let table = Table::from_order("ladder5", elements, &strict).expect("ladder5 is a lattice");
        Lattice {
            id: "ladder5".into(),
            repr: Repr::Finite(table),
            names: vec![(a, "a"), (b, "b"), (c, "c")],
            flat: false,
        }
    }

    /// Resolves a lattice id: `m<n>`, `momega`, `n5` or `ladder5`.
    pub fn by_id(id: &str) -> Result<Self, LatticeError> {
        match id {
            "momega" | "mω" => Ok(Lattice::m_omega()),
            "n5" => Ok(Lattice::n5()),
            "ladder5" => Ok(Lattice::ladder5()),
            _ => {
                let n = id
                    .strip_prefix('m')
                    .and_then(|rest| rest.parse::<u32>().ok())
                    .ok_or_else(|| LatticeError::UnknownId(id.into()))?;
                Lattice::mn(n)
            }
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.repr, Repr::Finite(_))
    }

    pub fn table(&self) -> Option<&Table> {
        match &self.repr {
            Repr::Finite(t) => Some(t),
            Repr::Omega => None,
        }
    }

    /// Carrier in enumeration order (`Bot`, middles, `Top`).
    pub fn carrier(&self) -> Result<&[Element], LatticeError> {
        self.table()
            .map(|t| t.elements.as_slice())
            .ok_or_else(|| LatticeError::Symbolic(self.id.clone()))
    }

    /// Middle-level capacity for the flat lattices `Mn` and `Mω`.
    pub fn capacity(&self) -> Option<Capacity> {
        if !self.flat {
            return None;
        }
        match &self.repr {
            Repr::Finite(t) => Some(Capacity::Finite(t.elements.len() as u32 - 2)),
            Repr::Omega => Some(Capacity::Omega),
        }
    }

    pub fn has_negation(&self) -> bool {
        match &self.repr {
            Repr::Finite(t) => t.neg.is_some(),
            Repr::Omega => true,
        }
    }

    /// Returns a copy with `neg` installed, given as images in carrier order.
    pub fn with_negation(&self, neg: &NegationMap) -> Result<Self, LatticeError> {
        let mut out = self.clone();
        match &mut out.repr {
            Repr::Finite(t) => {
                let images = neg
                    .images
                    .iter()
                    .map(|&e| t.index(e).ok_or_else(|| self.unknown(e)))
                    .collect::<Result<Vec<_>, _>>()?;
                t.neg = Some(images);
                Ok(out)
            }
            Repr::Omega => Err(LatticeError::Symbolic(self.id.clone())),
        }
    }

    fn unknown(&self, e: Element) -> LatticeError {
        LatticeError::UnknownElement {
            lattice: self.id.clone(),
            element: e.to_string(),
        }
    }

    pub fn contains(&self, e: Element) -> bool {
        match &self.repr {
            Repr::Finite(t) => t.index(e).is_some(),
            Repr::Omega => !matches!(e, Element::Mid(0)),
        }
    }

    fn idx(&self, t: &Table, e: Element) -> Result<usize, LatticeError> {
        t.index(e).ok_or_else(|| self.unknown(e))
    }

    fn check(&self, e: Element) -> Result<(), LatticeError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(self.unknown(e))
        }
    }

    pub fn leq(&self, a: Element, b: Element) -> Result<bool, LatticeError> {
        match &self.repr {
            Repr::Finite(t) => Ok(t.leq[self.idx(t, a)?][self.idx(t, b)?]),
            Repr::Omega => {
                self.check(a)?;
                self.check(b)?;
                Ok(a == b || a == Element::Bot || b == Element::Top)
            }
        }
    }

    pub fn meet(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        match &self.repr {
            Repr::Finite(t) => Ok(t.elements[t.meet[self.idx(t, a)?][self.idx(t, b)?]]),
            Repr::Omega => {
                self.check(a)?;
                self.check(b)?;
                Ok(match (a, b) {
                    (Element::Top, x) | (x, Element::Top) => x,
                    (Element::Bot, _) | (_, Element::Bot) => Element::Bot,
                    (x, y) if x == y => x,
                    _ => Element::Bot,
                })
            }
        }
    }

    pub fn join(&self, a: Element, b: Element) -> Result<Element, LatticeError> {
        match &self.repr {
            Repr::Finite(t) => Ok(t.elements[t.join[self.idx(t, a)?][self.idx(t, b)?]]),
            Repr::Omega => {
                self.check(a)?;
                self.check(b)?;
                Ok(match (a, b) {
                    (Element::Bot, x) | (x, Element::Bot) => x,
                    (Element::Top, _) | (_, Element::Top) => Element::Top,
                    (x, y) if x == y => x,
                    _ => Element::Top,
                })
            }
        }
    }

    pub fn neg(&self, a: Element) -> Result<Element, LatticeError> {
        match &self.repr {
            Repr::Finite(t) => {
                let i = self.idx(t, a)?;
                let neg = t.neg.as_ref().ok_or_else(|| LatticeError::NoNegation(self.id.clone()))?;
                Ok(t.elements[neg[i]])
            }
            Repr::Omega => {
                self.check(a)?;
                Ok(match a {
                    Element::Top => Element::Bot,
                    Element::Bot => Element::Top,
                    mid => mid,
                })
            }
        }
    }

    /// Display name of an element in this lattice.
    pub fn name(&self, e: Element) -> String {
        self.names
            .iter()
            .find(|(x, _)| *x == e)
            .map(|(_, n)| n.to_string())
            .unwrap_or_else(|| e.to_string())
    }

    /// Inverse of [`Lattice::name`]; also accepts the generic spellings
    /// `Top`, `Bot`, `Mid<k>`.
    pub fn parse_element(&self, text: &str) -> Result<Element, LatticeError> {
        let found = self
            .names
            .iter()
            .find(|(_, n)| *n == text)
            .map(|(e, _)| *e)
            .or_else(|| match text {
                "Top" | "top" | "⊤" => Some(Element::Top),
                "Bot" | "bot" | "⊥" => Some(Element::Bot),
                _ => text
                    .strip_prefix("Mid")
                    .map(|k| k.trim_start_matches('-'))
                    .and_then(|k| k.parse::<u32>().ok())
                    .map(Element::Mid),
            });
        match found {
            Some(e) if self.contains(e) => Ok(e),
            _ => Err(LatticeError::UnknownElement {
                lattice: self.id.clone(),
                element: text.into(),
            }),
        }
    }
}

impl FromStr for Lattice {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lattice::by_id(s)
    }
}

/// A unary map on a finite carrier, stored as images in carrier order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NegationMap {
    pub images: Vec<Element>,
}

impl NegationMap {
    pub fn apply(&self, carrier: &[Element], e: Element) -> Option<Element> {
        carrier.iter().position(|&x| x == e).map(|i| self.images[i])
    }
}

/// Every involution `f` of the carrier with `f(a & b) = f(a) | f(b)` and
/// `f(a | b) = f(a) & f(b)`, sorted by image sequence.
pub fn find_demorgan_negations(l: &Lattice) -> Result<Vec<NegationMap>, LatticeError> {
    let t = l.table().ok_or_else(|| LatticeError::Symbolic(l.id.clone()))?;
    let size = t.elements.len();
    let mut found = Vec::new();
    let mut image: Vec<Option<usize>> = vec![None; size];
    involutions(&mut image, &mut |map: &[usize]| {
        let demorgan = (0..size).all(|a| {
            (0..size).all(|b| {
                map[t.meet[a][b]] == t.join[map[a]][map[b]] && map[t.join[a][b]] == t.meet[map[a]][map[b]]
            })
        });
        if demorgan {
            found.push(NegationMap {
                images: map.iter().map(|&i| t.elements[i]).collect(),
            });
        }
    });
    found.sort();
    Ok(found)
}

fn involutions(image: &mut Vec<Option<usize>>, visit: &mut dyn FnMut(&[usize])) {
    let Some(i) = image.iter().position(Option::is_none) else {
        let map: Vec<usize> = image.iter().map(|x| x.expect("complete")).collect();
        visit(&map);
        return;
    };
    for j in i..image.len() {
        if image[j].is_some() {
            continue;
        }
        image[i] = Some(j);
        image[j] = Some(i);
        involutions(image, visit);
        image[j] = None;
        image[i] = None;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Logic {
    #[serde(rename = "etl")]
    Etl,
    #[serde(rename = "nfl")]
    Nfl,
}

impl Logic {
    pub const ALL: [Logic; 2] = [Logic::Etl, Logic::Nfl];
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Etl => "ETL",
            Logic::Nfl => "NFL",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "etl" => Ok(Logic::Etl),
            "nfl" => Ok(Logic::Nfl),
            other => Err(format!("unknown logic `{other}` (expected etl or nfl)")),
        }
    }
}

/// A lattice with a designated-value policy: `{Top}` for ETL, everything
/// but `Bot` for NFL.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub lattice: Lattice,
    pub logic: Logic,
}

impl Matrix {
    pub fn new(lattice: Lattice, logic: Logic) -> Result<Self, LatticeError> {
        if !lattice.has_negation() {
            return Err(LatticeError::NoNegation(lattice.id.clone()));
        }
        Ok(Matrix { lattice, logic })
    }

    pub fn designated(&self, e: Element) -> bool {
        match self.logic {
            Logic::Etl => e == Element::Top,
            Logic::Nfl => e != Element::Bot,
        }
    }

    pub fn name(&self) -> String {
        format!("{}_{}", self.logic, self.lattice.id)
    }
}
