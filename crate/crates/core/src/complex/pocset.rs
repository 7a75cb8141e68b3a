//! Half-space systems (pocsets) and their cubulation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CubeComplex, EdgeList, Side};
use crate::error::{Error, Result};

/// One side of a named wall, written `name+` or `name-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token {
    pub wall: String,
    pub side: Side,
}

impl Token {
    pub fn new(wall: impl Into<String>, side: Side) -> Self {
        Token { wall: wall.into(), side }
    }

    pub fn complement(&self) -> Token {
        Token { wall: self.wall.clone(), side: self.side.opposite() }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.side == Side::Plus { '+' } else { '-' };
        write!(f, "{}{sign}", self.wall)
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let side = match s.chars().last() {
            Some('+') => Side::Plus,
            Some('-') => Side::Minus,
            _ => return Err(Error::InvalidParameter(format!("token `{s}` must end in + or -"))),
        };
        let wall = &s[..s.len() - 1];
        if wall.is_empty() {
            return Err(Error::InvalidParameter(format!("token `{s}` has no wall name")));
        }
        Ok(Token::new(wall, side))
    }
}

impl TryFrom<String> for Token {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Token> for String {
    fn from(t: Token) -> String {
        t.to_string()
    }
}

/// Walls with a nesting relation on their sides: `(a, b)` means `a ⊆ b`.
///
/// The vertices of the realized complex are named by sign strings listing the chosen
/// side of every wall in order, e.g. `+-+`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpaceSystem {
    pub walls: Vec<String>,
    #[serde(default)]
    pub nesting: Vec<(Token, Token)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
}

impl HalfSpaceSystem {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Nesting closed under complements and transitivity, as a matrix over token
    /// indices `2 * wall + (side == Plus)`.
    pub fn closure(&self) -> Result<Vec<FixedBitSet>> {
        let m = self.walls.len();
        let mut index = HashMap::new();
        for (i, w) in self.walls.iter().enumerate() {
            if index.insert(w.as_str(), i).is_some() {
                return Err(Error::DuplicateWall(w.clone()));
            }
        }
        let token_index = |t: &Token| -> Result<usize> {
            let w = *index.get(t.wall.as_str()).ok_or_else(|| Error::UnknownWall(t.wall.clone()))?;
            Ok(2 * w + usize::from(t.side == Side::Plus))
        };
        let mut below = vec![FixedBitSet::with_capacity(2 * m); 2 * m];
        for (t, row) in below.iter_mut().enumerate() {
            row.insert(t);
        }
        for (a, b) in &self.nesting {
            let (a, b) = (token_index(a)?, token_index(b)?);
            below[a].insert(b);
            below[b ^ 1].insert(a ^ 1);
        }
        // Warshall: below[a] holds every b with a ⊆ b.
        for k in 0..2 * m {
            let row_k = below[k].clone();
            for row in below.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let name = |t: usize| Token::new(self.walls[t / 2].clone(), if t % 2 == 1 { Side::Plus } else { Side::Minus });
        for a in 0..2 * m {
            if below[a].contains(a ^ 1) {
                return Err(Error::InconsistentNesting { token: name(a).to_string(), other: name(a ^ 1).to_string() });
            }
            for b in below[a].ones() {
                if b != a && below[b].contains(a) {
                    return Err(Error::InconsistentNesting { token: name(a).to_string(), other: name(b).to_string() });
                }
            }
        }
        Ok(below)
    }
}

/// Builds the cube complex whose vertices are the consistent orientations of the
/// system: choices of one side per wall with no two chosen sides disjoint.
///
/// Fails with [`Error::BudgetExceeded`] once more than `budget` orientations exist.
pub fn realize_pocset(system: &HalfSpaceSystem, budget: usize) -> Result<CubeComplex> {
    let m = system.walls.len();
    if m == 0 {
        return Err(Error::TooFewWalls { expected: 1, got: 0 });
    }
    let below = system.closure()?;
    // Tokens a and b are disjoint when a ⊆ b*.
    let disjoint = |a: usize, b: usize| below[a].contains(b ^ 1);

    let mut orientations: Vec<Vec<u8>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    let mut overflow = false;
    enumerate(m, &disjoint, &mut chosen, &mut orientations, budget, &mut overflow);
    if overflow {
        return Err(Error::BudgetExceeded(format!("more than {budget} consistent orientations")));
    }
    if orientations.is_empty() {
        return Err(Error::NoOrientation);
    }

    let label = |o: &[u8]| -> String { o.iter().map(|&s| if s == 1 { '+' } else { '-' }).collect() };
    let names: Vec<String> = orientations.iter().map(|o| label(o)).collect();
    let lookup: HashMap<&[u8], usize> = orientations.iter().enumerate().map(|(i, o)| (o.as_slice(), i)).collect();
    let mut edges = Vec::new();
    let mut flipped = vec![0u8; m];
    for (i, o) in orientations.iter().enumerate() {
        flipped.copy_from_slice(o);
        for w in 0..m {
            flipped[w] ^= 1;
            if let Some(&j) = lookup.get(flipped.as_slice()) {
                if j > i {
                    edges.push((names[i].clone(), names[j].clone(), system.walls[w].clone()));
                }
            }
            flipped[w] ^= 1;
        }
    }
    // Each wall should contribute edges in wall order so indices match the system.
    edges.sort_by_key(|(_, _, w)| system.walls.iter().position(|x| x == w));

    let basepoint = match &system.basepoint {
        Some(b) => b.clone(),
        None => names.iter().min().expect("nonempty").clone(),
    };
    let graph = EdgeList::new(&names, edges, &basepoint)?;
    if graph.wall_count() != m {
        return Err(Error::Precondition("some wall has no dual edge in the realization".into()));
    }
    CubeComplex::assemble(graph)
}

fn enumerate(
    m: usize,
    disjoint: &impl Fn(usize, usize) -> bool,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<u8>>,
    budget: usize,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    let w = chosen.len();
    if w == m {
        if out.len() >= budget {
            *overflow = true;
            return;
        }
        out.push(chosen.iter().map(|&t| (t % 2) as u8).collect());
        return;
    }
    for side in [1, 0] {
        let t = 2 * w + side;
        if chosen.iter().all(|&u| !disjoint(t, u)) {
            chosen.push(t);
            enumerate(m, disjoint, chosen, out, budget, overflow);
            chosen.pop();
        }
    }
}

impl CubeComplex {
    /// The half-space system of the complex: sides named after the basepoint
    /// convention (`w-` contains the basepoint), with every proper inclusion between
    /// sides of distinct walls listed.
    pub fn halfspace_system(&self) -> HalfSpaceSystem {
        let mut nesting = Vec::new();
        let sides: Vec<(Token, _)> = self
            .walls()
            .flat_map(|w| {
                [Side::Minus, Side::Plus].map(|s| (Token::new(self.wall_name(w), s), self.half_space(w, s)))
            })
            .collect();
        for (a, sa) in &sides {
            for (b, sb) in &sides {
                if a.wall != b.wall && sa.is_subset(sb) {
                    nesting.push((a.clone(), b.clone()));
                }
            }
        }
        let basepoint = Some("-".repeat(self.wall_count()));
        HalfSpaceSystem { walls: self.wall_names().to_vec(), nesting, basepoint }
    }
}

/// A random system realized by splitting a ground set of `ground` points in two,
/// `walls` times. Distinct splits become distinct walls and nesting is set inclusion.
pub fn random_pocset(seed: u64, ground: usize, walls: usize) -> HalfSpaceSystem {
    assert!(ground >= 2, "need at least two points to split");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut splits: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut order = Vec::new();
    let mut attempts = 0;
    while order.len() < walls && attempts < 100 * walls {
        attempts += 1;
        // Normalized so point 0 is always on the minus side.
        let mut split: Vec<bool> = (0..ground).map(|_| rng.random_bool(0.5)).collect();
        split[0] = false;
        if split.iter().all(|&b| !b) {
            continue;
        }
        if splits.insert(split.clone()) {
            order.push(split);
        }
    }
    let names: Vec<String> = (0..order.len()).map(|i| format!("h{i}")).collect();
    let side_set = |i: usize, side: Side| -> Vec<bool> {
        order[i].iter().map(|&b| b == (side == Side::Plus)).collect()
    };
    let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(&x, &y)| !x || y);
    let mut nesting = Vec::new();
    for i in 0..order.len() {
        for j in 0..order.len() {
            if i == j {
                continue;
            }
            for si in [Side::Minus, Side::Plus] {
                for sj in [Side::Minus, Side::Plus] {
                    if subset(&side_set(i, si), &side_set(j, sj)) {
                        nesting.push((Token::new(names[i].clone(), si), Token::new(names[j].clone(), sj)));
                    }
                }
            }
        }
    }
    HalfSpaceSystem { walls: names, nesting, basepoint: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(walls: &[&str], nesting: &[(&str, &str)]) -> HalfSpaceSystem {
        HalfSpaceSystem {
            walls: walls.iter().map(|w| w.to_string()).collect(),
            nesting: nesting.iter().map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap())).collect(),
            basepoint: None,
        }
    }

    #[test]
    fn two_unrelated_walls_give_a_square() {
        let c = realize_pocset(&system(&["a", "b"], &[]), 1 << 16).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.dimension(), 2);
        assert!(c.validate().passed());
    }

    #[test]
    fn nested_walls_give_a_path() {
        let c = realize_pocset(&system(&["a", "b", "c"], &[("a+", "b+"), ("b+", "c+")]), 1 << 16).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.dimension(), 1);
        assert!(c.validate().passed());
    }

    #[test]
    fn token_contained_in_its_complement_is_rejected() {
        let err = realize_pocset(&system(&["a", "b"], &[("a+", "b+"), ("b+", "a-")]), 1 << 16).unwrap_err();
        assert!(matches!(err, Error::InconsistentNesting { .. }));
    }

    #[test]
    fn budget_is_enforced() {
        let walls: Vec<String> = (0..10).map(|i| format!("w{i}")).collect();
        let s = HalfSpaceSystem { walls, nesting: vec![], basepoint: None };
        assert!(matches!(realize_pocset(&s, 100), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = system(&["a", "b"], &[("a+", "b-")]);
        let back = HalfSpaceSystem::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(s, back);
        assert!(HalfSpaceSystem::from_json_str(r#"{"walls":["a"],"nesting":[["a*","a+"]]}"#).is_err());
    }

    #[test]
    fn random_systems_realize_as_valid_complexes() {
        for seed in 0..5 {
            let s = random_pocset(seed, 6, 5);
            let c = realize_pocset(&s, 1 << 16).unwrap();
            assert!(c.validate().passed(), "seed {seed}");
            assert_eq!(c.wall_count(), s.walls.len());
        }
    }
}
