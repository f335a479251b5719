use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{bail, Result};

/// Literal `x_{var+1}` or its negation. Universe index is `2*var + neg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub neg: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, neg: false }
    }
    pub fn neg(var: usize) -> Lit {
        Lit { var, neg: true }
    }
    pub fn index(self) -> usize {
        2 * self.var + self.neg as usize
    }
    pub fn from_index(i: usize) -> Lit {
        Lit { var: i / 2, neg: i % 2 == 1 }
    }
    pub fn negate(self) -> Lit {
        Lit { var: self.var, neg: !self.neg }
    }
    /// DIMACS encoding: `var+1`, negative when negated.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.neg {
            -v
        } else {
            v
        }
    }
    pub fn from_dimacs(x: i64) -> Option<Lit> {
        if x == 0 {
            return None;
        }
        Some(Lit { var: x.unsigned_abs() as usize - 1, neg: x < 0 })
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_dimacs())
    }
}

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = i64::deserialize(d)?;
        Lit::from_dimacs(x).ok_or_else(|| serde::de::Error::custom("literal 0 is not allowed"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
    /// Optional variable names; `x{i+1}` when absent.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub var_names: Vec<String>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Cnf {
        Cnf { num_vars, clauses, var_names: Vec::new() }
    }

    /// Build from DIMACS-style signed integers.
    pub fn from_ints(num_vars: usize, clauses: &[&[i64]]) -> Result<Cnf> {
        let mut cs = Vec::new();
        for c in clauses {
            let mut lits = Vec::new();
            for &x in *c {
                match Lit::from_dimacs(x) {
                    Some(l) => lits.push(l),
                    None => bail!(Format, "literal 0 inside a clause"),
                }
            }
            cs.push(lits);
        }
        let f = Cnf::new(num_vars, cs);
        f.validate()?;
        Ok(f)
    }

    pub fn var_name(&self, v: usize) -> String {
        self.var_names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1))
    }

    pub fn num_literals(&self) -> usize {
        2 * self.num_vars
    }

    pub fn validate(&self) -> Result<()> {
        if !self.var_names.is_empty() && self.var_names.len() != self.num_vars {
            bail!(Format, "{} variable names for {} variables", self.var_names.len(), self.num_vars);
        }
        let mut seen = std::collections::HashSet::new();
        for n in &self.var_names {
            if n.is_empty() || n.starts_with('~') || !seen.insert(n.as_str()) {
                bail!(Format, "variable name `{n}` is empty, negated or repeated");
            }
        }
        for (j, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                bail!(Format, "clause {j} is empty");
            }
            for l in c {
                if l.var >= self.num_vars {
                    bail!(Format, "clause {j} references undeclared variable {}", l.var + 1);
                }
            }
        }
        Ok(())
    }

    pub fn validate_3cnf(&self) -> Result<()> {
        self.validate()?;
        for (j, c) in self.clauses.iter().enumerate() {
            if c.len() != 3 {
                bail!(Format, "clause {j} has width {}, expected 3", c.len());
            }
        }
        Ok(())
    }

    /// Evaluate under `assign[v]` = truth of variable v.
    pub fn eval(&self, assign: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| assign[l.var] != l.neg))
    }
}

/// Undirected multigraph. Vertex names are optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        Graph { n, edges, names: Vec::new() }
    }

    pub fn vertex_name(&self, v: usize) -> String {
        self.names.get(v).cloned().unwrap_or_else(|| format!("v{v}"))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.names.is_empty() && self.names.len() != self.n {
            bail!(Format, "{} vertex names for {} vertices", self.names.len(), self.n);
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a >= self.n || b >= self.n {
                bail!(Format, "edge {i} = ({a},{b}) has an undeclared endpoint");
            }
        }
        Ok(())
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }

    /// Incident edge ids per vertex (a loop is listed once).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(i);
            if b != a {
                inc[b].push(i);
            }
        }
        inc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Digraph {
        Digraph { n, arcs, names: Vec::new() }
    }

    pub fn vertex_name(&self, v: usize) -> String {
        self.names.get(v).cloned().unwrap_or_else(|| format!("v{v}"))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.names.is_empty() && self.names.len() != self.n {
            bail!(Format, "{} vertex names for {} vertices", self.names.len(), self.n);
        }
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            if a >= self.n || b >= self.n {
                bail!(Format, "arc {i} = ({a},{b}) has an undeclared endpoint");
            }
        }
        Ok(())
    }

    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (i, &(a, _)) in self.arcs.iter().enumerate() {
            out[a].push(i);
        }
        out
    }

    pub fn in_arcs(&self) -> Vec<Vec<usize>> {
        let mut inn = vec![Vec::new(); self.n];
        for (i, &(_, b)) in self.arcs.iter().enumerate() {
            inn[b].push(i);
        }
        inn
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphK {
    pub graph: Graph,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphK {
    pub graph: Digraph,
    pub k: usize,
}

/// Set Cover: universe = the sets, ground = `0..ground`. Hitting Set:
/// universe = the ground elements, constraints = the sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystem {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetSystem {
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.sets.iter().enumerate() {
            if let Some(&x) = s.iter().find(|&&x| x >= self.ground) {
                bail!(Format, "set {i} contains {x}, outside ground set of size {}", self.ground);
            }
        }
        Ok(())
    }
}

/// Facility location data. `cost[i][j]` is the cost of serving client j from facility i.
/// `open` is only meaningful for UFL; `p` only for p-Center / p-Median.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facility {
    pub clients: usize,
    pub cost: Vec<Vec<i64>>,
    #[serde(default)]
    pub open: Vec<i64>,
    #[serde(default)]
    pub p: usize,
    pub k: i64,
}

impl Facility {
    pub fn facilities(&self) -> usize {
        self.cost.len()
    }

    pub fn validate(&self, with_open: bool) -> Result<()> {
        for (i, row) in self.cost.iter().enumerate() {
            if row.len() != self.clients {
                bail!(Format, "facility {i} has {} costs for {} clients", row.len(), self.clients);
            }
        }
        if with_open && self.open.len() != self.cost.len() {
            bail!(Format, "{} opening costs for {} facilities", self.open.len(), self.cost.len());
        }
        Ok(())
    }
}

pub(crate) mod dec {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.trim().as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom(format!("`{s}` is not a decimal integer")))
    }

    pub mod vec {
        use num_bigint::BigUint;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            xs.iter().map(|x| x.to_str_radix(10)).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            Vec::<String>::deserialize(d)?
                .into_iter()
                .map(|s| {
                    BigUint::parse_bytes(s.trim().as_bytes(), 10).ok_or_else(|| {
                        serde::de::Error::custom(format!("`{s}` is not a decimal integer"))
                    })
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSum {
    #[serde(with = "dec::vec")]
    pub items: Vec<BigUint>,
    #[serde(with = "dec")]
    pub target: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Knapsack {
    #[serde(with = "dec::vec")]
    pub prices: Vec<BigUint>,
    #[serde(with = "dec::vec")]
    pub weights: Vec<BigUint>,
    /// Minimum total price P.
    #[serde(with = "dec")]
    pub min_price: BigUint,
    /// Capacity W.
    #[serde(with = "dec")]
    pub capacity: BigUint,
}

/// Partition solutions are the side containing item 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    #[serde(with = "dec::vec")]
    pub items: Vec<BigUint>,
}

/// Two machine scheduling; a solution is the job set of machine 1, which
/// always holds job 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scheduling {
    #[serde(with = "dec::vec")]
    pub jobs: Vec<BigUint>,
    #[serde(with = "dec")]
    pub deadline: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DHamPath {
    pub graph: Digraph,
    pub s: usize,
    pub t: usize,
}

/// TSP on the complete graph `K_n`. Weights follow the edge order
/// `(0,1),(0,2),..,(0,n-1),(1,2),..`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tsp {
    pub n: usize,
    pub weights: Vec<i64>,
    pub k: i64,
}

impl Tsp {
    pub fn edge_list(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        e
    }

    pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }
}

/// Vertex-disjoint paths connecting each `(source, sink)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ddp {
    pub graph: Digraph,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Steiner {
    pub graph: Graph,
    pub terminals: Vec<usize>,
    pub cost: Vec<i64>,
    pub k: i64,
}
