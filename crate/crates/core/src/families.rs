//! Named graph families, built from their definitions with the vertex names
//! used throughout the verification reports.
//!
//! | family            | vertices                              | names                        |
//! |-------------------|---------------------------------------|------------------------------|
//! | `path_power(k,n)` | `n`                                   | `x_1..x_n`                   |
//! | `J_k`             | `(2k-1)(k+1)+1`                       | `z_1..z_m`                   |
//! | `Z_k`             | `k(k+1)+2`                            | `v_1..v_n`                   |
//! | `S_k`             | `(k-1)(k+1)+2` plus four pendant ends | `v_i`, `w_1..w_4`            |
//! | `S+_k`            | `S_k` plus one vertex                 | `v_i`, `w_1..w_4`, `w+`      |
//! | `F_k`             | `k^2`                                 | `v_1..v_n`                   |
//! | `M_{k,1,l}`       | `2k^2 + l`                            | `v_i`, `v'_i`, `w_1..w_l`    |
//! | `M2+`, `M2-`      | `10`                                  | `a..e`, `a'..e'`             |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: parameter {param} = {value} out of range ({rule})")]
    OutOfRange {
        family: &'static str,
        param: &'static str,
        value: i64,
        rule: &'static str,
    },
    #[error("{0}: missing required parameter {1}")]
    Missing(&'static str, &'static str),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("unknown S+ case {0:?} (expected a, b, c or d)")]
    UnknownCase(String),
}

fn require(family: &'static str, param: &'static str, value: i64, min: i64, rule: &'static str) -> Result<(), FamilyError> {
    if value < min {
        Err(FamilyError::OutOfRange {
            family,
            param,
            value,
            rule,
        })
    } else {
        Ok(())
    }
}

/// Neighbourhood of the extra vertex `w+` of `S+_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SPlusCase {
    /// `{w_1, w_2, v_1..v_k}`
    A,
    /// `{v_{n-k+1}..v_n, w_3, w_4}`
    B,
    /// `{w_1, w_2, v_1..v_{k-1}}`
    C,
    /// `{v_{n-k+2}..v_n, w_3, w_4}`
    D,
}

impl SPlusCase {
    pub const ALL: [SPlusCase; 4] = [SPlusCase::A, SPlusCase::B, SPlusCase::C, SPlusCase::D];

    /// The case obtained by reading the layout backwards.
    pub fn mirrored(self) -> SPlusCase {
        match self {
            SPlusCase::A => SPlusCase::B,
            SPlusCase::B => SPlusCase::A,
            SPlusCase::C => SPlusCase::D,
            SPlusCase::D => SPlusCase::C,
        }
    }

    pub fn at_front(self) -> bool {
        matches!(self, SPlusCase::A | SPlusCase::C)
    }
}

impl fmt::Display for SPlusCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            SPlusCase::A => "a",
            SPlusCase::B => "b",
            SPlusCase::C => "c",
            SPlusCase::D => "d",
        };
        f.write_str(c)
    }
}

impl FromStr for SPlusCase {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(SPlusCase::A),
            "b" => Ok(SPlusCase::B),
            "c" => Ok(SPlusCase::C),
            "d" => Ok(SPlusCase::D),
            _ => Err(FamilyError::UnknownCase(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// A family member with its parameters; see [`FamilySpec::build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    PathPower { k: i64, n: i64 },
    J { k: i64 },
    Z { k: i64 },
    F { k: i64 },
    S { k: i64 },
    SPlus { k: i64, case: SPlusCase },
    M { k: i64, l: i64 },
    M2(Sign),
    Gem,
}

impl FamilySpec {
    /// Assemble a spec from CLI-style inputs (`path-power`, `J`, `S+`, `M2-`, ...).
    pub fn from_parts(
        family: &str,
        k: Option<i64>,
        n: Option<i64>,
        l: Option<i64>,
        case: Option<SPlusCase>,
    ) -> Result<FamilySpec, FamilyError> {
        let need_k = |f: &'static str| k.ok_or(FamilyError::Missing(f, "k"));
        Ok(match family {
            "path-power" | "pathpower" | "P" => FamilySpec::PathPower {
                k: need_k("path-power")?,
                n: n.ok_or(FamilyError::Missing("path-power", "n"))?,
            },
            "J" | "j" => FamilySpec::J { k: need_k("J")? },
            "Z" | "z" => FamilySpec::Z { k: need_k("Z")? },
            "F" | "f" => FamilySpec::F { k: need_k("F")? },
            "S" | "s" => FamilySpec::S { k: need_k("S")? },
            "S+" | "s+" | "splus" => FamilySpec::SPlus {
                k: need_k("S+")?,
                case: case.ok_or(FamilyError::Missing("S+", "case"))?,
            },
            "M" | "m" => FamilySpec::M {
                k: need_k("M")?,
                l: l.ok_or(FamilyError::Missing("M", "l"))?,
            },
            "M2+" | "m2+" => FamilySpec::M2(Sign::Plus),
            "M2-" | "m2-" => FamilySpec::M2(Sign::Minus),
            "gem" => FamilySpec::Gem,
            other => return Err(FamilyError::UnknownFamily(other.to_owned())),
        })
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        match *self {
            FamilySpec::PathPower { k, n } => path_power(k, n),
            FamilySpec::J { k } => make_j(k).map(|(g, _)| g),
            FamilySpec::Z { k } => make_z(k),
            FamilySpec::F { k } => make_f(k),
            FamilySpec::S { k } => make_s(k),
            FamilySpec::SPlus { k, case } => make_s_plus(k, case),
            FamilySpec::M { k, l } => make_m(k, l),
            FamilySpec::M2(sign) => Ok(make_m2(sign)),
            FamilySpec::Gem => Ok(make_gem()),
        }
    }

    /// Whether the graph is a plain path power (so it has a bubble model).
    pub fn path_power_params(&self) -> Option<(usize, usize)> {
        let k = |k: i64| k.max(0) as usize;
        match *self {
            FamilySpec::PathPower { k: kk, n } => Some((k(kk), n.max(0) as usize)),
            FamilySpec::J { k: kk } => Some((k(kk), j_order(k(kk)))),
            FamilySpec::Z { k: kk } => Some((k(kk), z_order(k(kk)))),
            FamilySpec::F { k: kk } => Some((k(kk), k(kk) * k(kk))),
            FamilySpec::Gem => Some((2, 5)),
            _ => None,
        }
    }
}

/// Number of vertices of `J_k`.
pub fn j_order(k: usize) -> usize {
    (2 * k - 1) * (k + 1) + 1
}

/// The index `g = (k-1)(k+1)` of the distinguished vertex `z_g` of `J_k`.
pub fn j_hole(k: usize) -> usize {
    (k - 1) * (k + 1)
}

/// Number of vertices of `Z_k`.
pub fn z_order(k: usize) -> usize {
    k * (k + 1) + 2
}

/// Core length `n = (k-1)(k+1)+2` of `S_k`.
pub fn s_core(k: usize) -> usize {
    (k - 1) * (k + 1) + 2
}

fn named_path_power(k: usize, n: usize, prefix: &str) -> Graph {
    let mut g = Graph::empty(n);
    for i in 1..=n {
        g.set_name(i, format!("{prefix}_{i}")).expect("fresh names");
        for j in i + 1..=(i + k).min(n) {
            g.add_edge(i, j).expect("in range");
        }
    }
    g
}

/// The `k`-path power on `n` vertices `x_1..x_n`: `x_i x_j` is an edge iff
/// `0 < j - i <= k`. The layout is the id order.
pub fn path_power(k: i64, n: i64) -> Result<Graph, FamilyError> {
    require("path-power", "k", k, 1, "k >= 1")?;
    require("path-power", "n", n, 1, "n >= 1")?;
    Ok(named_path_power(k as usize, n as usize, "x"))
}

/// `J_k` together with `g`, which is also the id of `z_g`.
pub fn make_j(k: i64) -> Result<(Graph, usize), FamilyError> {
    require("J", "k", k, 2, "k >= 2")?;
    let k = k as usize;
    Ok((named_path_power(k, j_order(k), "z"), j_hole(k)))
}

/// `J_k - z_g`.
pub fn make_j_minus_hole(k: i64) -> Result<Graph, FamilyError> {
    let (j, g) = make_j(k)?;
    Ok(j.delete_vertex(g).expect("z_g exists").graph)
}

pub fn make_z(k: i64) -> Result<Graph, FamilyError> {
    require("Z", "k", k, 0, "k >= 0")?;
    let k = k as usize;
    Ok(named_path_power(k, z_order(k), "v"))
}

pub fn make_f(k: i64) -> Result<Graph, FamilyError> {
    require("F", "k", k, 3, "k >= 3")?;
    let k = k as usize;
    Ok(named_path_power(k, k * k, "v"))
}

fn s_with_ends(k: usize, extra: usize) -> Graph {
    let n = s_core(k);
    let core = named_path_power(k, n, "v");
    let mut g = Graph::empty(n + 4 + extra);
    for (u, v) in core.edges() {
        g.add_edge(u, v).expect("in range");
    }
    for i in 1..=n {
        g.set_name(i, format!("v_{i}")).expect("fresh");
    }
    for i in 1..=4 {
        g.set_name(n + i, format!("w_{i}")).expect("fresh");
    }
    let (w1, w2, w3, w4) = (n + 1, n + 2, n + 3, n + 4);
    for (a, b) in [(w1, w2), (w2, 1), (n, w3), (w3, w4)] {
        g.add_edge(a, b).expect("in range");
    }
    g
}

pub fn make_s(k: i64) -> Result<Graph, FamilyError> {
    require("S", "k", k, 2, "k >= 2")?;
    Ok(s_with_ends(k as usize, 0))
}

pub fn make_s_plus(k: i64, case: SPlusCase) -> Result<Graph, FamilyError> {
    require("S+", "k", k, 3, "k >= 3")?;
    let k = k as usize;
    let n = s_core(k);
    let mut g = s_with_ends(k, 1);
    let plus = n + 5;
    g.set_name(plus, "w+").expect("fresh");
    let (w1, w2, w3, w4) = (n + 1, n + 2, n + 3, n + 4);
    let nbhd: Vec<usize> = match case {
        SPlusCase::A => [w1, w2].into_iter().chain(1..=k).collect(),
        SPlusCase::B => (n - k + 1..=n).chain([w3, w4]).collect(),
        SPlusCase::C => [w1, w2].into_iter().chain(1..k).collect(),
        SPlusCase::D => (n - k + 2..=n).chain([w3, w4]).collect(),
    };
    for u in nbhd {
        g.add_edge(plus, u).expect("in range");
    }
    Ok(g)
}

/// `M_{k,1,l}`: two copies of `F_k` whose last layout vertices are joined
/// by an induced path through `w_1..w_l`.
pub fn make_m(k: i64, l: i64) -> Result<Graph, FamilyError> {
    require("M", "k", k, 3, "k >= 3")?;
    require("M", "l", l, 0, "l >= 0")?;
    let (k, l) = (k as usize, l as usize);
    let n = k * k;
    let f = named_path_power(k, n, "v");
    let mut g = Graph::empty(2 * n + l);
    for (u, v) in f.edges() {
        g.add_edge(u, v).expect("in range");
        g.add_edge(u + n, v + n).expect("in range");
    }
    for i in 1..=n {
        g.set_name(i, format!("v_{i}")).expect("fresh");
        g.set_name(n + i, format!("v'_{i}")).expect("fresh");
    }
    for i in 1..=l {
        g.set_name(2 * n + i, format!("w_{i}")).expect("fresh");
    }
    let connector: Vec<usize> = std::iter::once(n)
        .chain(2 * n + 1..=2 * n + l)
        .chain(std::iter::once(2 * n))
        .collect();
    for pair in connector.windows(2) {
        g.add_edge(pair[0], pair[1]).expect("in range");
    }
    Ok(g)
}

/// The gem `P_5^2` on `x_1..x_5`; `x_3` is the dominating vertex.
pub fn make_gem() -> Graph {
    named_path_power(2, 5, "x")
}

/// `M2-` is two disjoint gems on `a..e` and `a'..e'` (layout order);
/// `M2+` additionally joins the layout ends `e` and `e'`.
pub fn make_m2(sign: Sign) -> Graph {
    let gem = make_gem();
    let mut g = Graph::empty(10);
    for (u, v) in gem.edges() {
        g.add_edge(u, v).expect("in range");
        g.add_edge(u + 5, v + 5).expect("in range");
    }
    for (i, c) in ["a", "b", "c", "d", "e"].iter().enumerate() {
        g.set_name(i + 1, *c).expect("fresh");
        g.set_name(i + 6, format!("{c}'")).expect("fresh");
    }
    if sign == Sign::Plus {
        g.add_edge(5, 10).expect("in range");
    }
    g
}

/// Every graph made of two gems plus one edge between them, one per
/// unordered pair of gem vertex orbits (`{a,e}`, `{b,d}`, `{c}`).
/// Each entry carries the join as `(x, y')`.
pub fn two_gem_variants() -> Vec<((&'static str, &'static str), Graph)> {
    let reps = ["a", "b", "c"];
    let mut out = Vec::new();
    for (i, x) in reps.iter().enumerate() {
        for y in &reps[i..] {
            let mut g = make_m2(Sign::Minus);
            let (u, v) = (g.vertex(x), g.vertex(&format!("{y}'")));
            g.add_edge(u, v).expect("in range");
            out.push(((*x, *y), g));
        }
    }
    out
}
