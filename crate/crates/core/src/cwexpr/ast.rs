use std::collections::BTreeSet;
use std::fmt;

/// A term of the clique-width algebra. Labels are positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CwExpr {
    /// A single vertex carrying `label`.
    Make { label: u32, name: String },
    /// Disjoint union.
    Union(Box<CwExpr>, Box<CwExpr>),
    /// Join every `i`-labelled vertex to every `j`-labelled vertex.
    AddEdges { i: u32, j: u32, child: Box<CwExpr> },
    /// Move every `from`-labelled vertex to label `to`.
    Relabel { from: u32, to: u32, child: Box<CwExpr> },
}

impl CwExpr {
    pub fn make(label: u32, name: impl Into<String>) -> Self {
        CwExpr::Make {
            label,
            name: name.into(),
        }
    }

    pub fn union(left: CwExpr, right: CwExpr) -> Self {
        CwExpr::Union(Box::new(left), Box::new(right))
    }

    pub fn eta(i: u32, j: u32, child: CwExpr) -> Self {
        CwExpr::AddEdges {
            i,
            j,
            child: Box::new(child),
        }
    }

    pub fn rho(from: u32, to: u32, child: CwExpr) -> Self {
        CwExpr::Relabel {
            from,
            to,
            child: Box::new(child),
        }
    }

    /// Every label mentioned anywhere in the term.
    pub fn labels(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| match e {
            CwExpr::Make { label, .. } => {
                out.insert(*label);
            }
            CwExpr::AddEdges { i, j, .. } => {
                out.insert(*i);
                out.insert(*j);
            }
            CwExpr::Relabel { from, to, .. } => {
                out.insert(*from);
                out.insert(*to);
            }
            CwExpr::Union(..) => {}
        });
        out
    }

    /// Number of distinct labels used.
    pub fn width(&self) -> usize {
        self.labels().len()
    }

    pub fn vertex_count(&self) -> usize {
        let mut count = 0;
        self.visit(&mut |e| {
            if matches!(e, CwExpr::Make { .. }) {
                count += 1;
            }
        });
        count
    }

    /// Vertex names in left-to-right order.
    pub fn vertex_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            CwExpr::Make { name, .. } => out.push(name),
            CwExpr::Union(l, r) => {
                l.collect_names(out);
                r.collect_names(out);
            }
            CwExpr::AddEdges { child, .. } | CwExpr::Relabel { child, .. } => {
                child.collect_names(out)
            }
        }
    }

    /// True iff the right operand of every union builds exactly one vertex.
    pub fn is_linear(&self) -> bool {
        match self {
            CwExpr::Make { .. } => true,
            CwExpr::Union(l, r) => r.vertex_count() == 1 && l.is_linear(),
            CwExpr::AddEdges { child, .. } | CwExpr::Relabel { child, .. } => child.is_linear(),
        }
    }

    fn visit(&self, f: &mut impl FnMut(&CwExpr)) {
        f(self);
        match self {
            CwExpr::Make { .. } => {}
            CwExpr::Union(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            CwExpr::AddEdges { child, .. } | CwExpr::Relabel { child, .. } => child.visit(f),
        }
    }

    /// Drop every vertex whose name fails `keep`. The result evaluates to the
    /// induced subgraph on the kept vertices, with the same labels; width and
    /// linearity cannot grow. `None` if nothing is kept.
    pub fn restrict(&self, keep: &impl Fn(&str) -> bool) -> Option<CwExpr> {
        match self {
            CwExpr::Make { name, .. } => keep(name).then(|| self.clone()),
            CwExpr::Union(l, r) => match (l.restrict(keep), r.restrict(keep)) {
                (Some(l), Some(r)) => Some(CwExpr::union(l, r)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
            CwExpr::AddEdges { i, j, child } => child.restrict(keep).map(|c| CwExpr::eta(*i, *j, c)),
            CwExpr::Relabel { from, to, child } => {
                child.restrict(keep).map(|c| CwExpr::rho(*from, *to, c))
            }
        }
    }

    /// Apply `f` to every vertex name.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> CwExpr {
        match self {
            CwExpr::Make { label, name } => CwExpr::make(*label, f(name)),
            CwExpr::Union(l, r) => CwExpr::union(l.rename(f), r.rename(f)),
            CwExpr::AddEdges { i, j, child } => CwExpr::eta(*i, *j, child.rename(f)),
            CwExpr::Relabel { from, to, child } => CwExpr::rho(*from, *to, child.rename(f)),
        }
    }

    /// Apply `f` to every label occurrence.
    pub fn map_labels(&self, f: &impl Fn(u32) -> u32) -> CwExpr {
        match self {
            CwExpr::Make { label, name } => CwExpr::make(f(*label), name.clone()),
            CwExpr::Union(l, r) => CwExpr::union(l.map_labels(f), r.map_labels(f)),
            CwExpr::AddEdges { i, j, child } => CwExpr::eta(f(*i), f(*j), child.map_labels(f)),
            CwExpr::Relabel { from, to, child } => {
                CwExpr::rho(f(*from), f(*to), child.map_labels(f))
            }
        }
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CwExpr::Make { label, name } => write!(f, "v({label},{name})"),
            CwExpr::Union(l, r) => write!(f, "({l} + {r})"),
            CwExpr::AddEdges { i, j, child } => write!(f, "eta({i},{j}){{ {child} }}"),
            CwExpr::Relabel { from, to, child } => write!(f, "rho({from}->{to}){{ {child} }}"),
        }
    }
}

/// Builds a linear expression one vertex at a time.
#[derive(Clone, Debug, Default)]
pub struct LinearBuilder {
    expr: Option<CwExpr>,
}

impl LinearBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: u32, name: impl Into<String>) {
        let v = CwExpr::make(label, name);
        self.expr = Some(match self.expr.take() {
            None => v,
            Some(e) => CwExpr::union(e, v),
        });
    }

    pub fn add_edges(&mut self, i: u32, j: u32) {
        let e = self.expr.take().expect("add_edges before any vertex");
        self.expr = Some(CwExpr::eta(i, j, e));
    }

    pub fn relabel(&mut self, from: u32, to: u32) {
        let e = self.expr.take().expect("relabel before any vertex");
        self.expr = Some(CwExpr::rho(from, to, e));
    }

    pub fn finish(self) -> Option<CwExpr> {
        self.expr
    }
}
