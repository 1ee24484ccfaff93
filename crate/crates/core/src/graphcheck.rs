//! Concrete graphs: certify that a graph is strongly regular and triangle-free,
//! recover its `(q, c)`, and test its second subconstituent against the
//! predicted spectrum using integer traces only.

use std::collections::VecDeque;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{as_integer, is_square, isqrt, Int};
use crate::error::{Error, Result};
use crate::feasibility::is_feasible;
use crate::params::ParamPair;
use crate::subconstituent::{power_sums_up_to, SubconstituentSpectrum};

/// Simple undirected graph on vertices `0..order`, stored as bitset rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl Graph {
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("a graph needs at least one vertex"));
        }
        let words = order.div_ceil(64);
        Ok(Graph {
            order,
            words,
            rows: vec![0; order * words],
        })
    }

    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(order)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.order || v >= self.order {
            return Err(Error::domain(format!(
                "edge ({u}, {v}) leaves the vertex set 0..{}",
                self.order
            )));
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&u| self.is_adjacent(v, u))
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            (u + 1..self.order)
                .filter(move |&v| self.is_adjacent(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.is_adjacent(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == self.order
    }

    fn adjacency_matrix(&self) -> Vec<Vec<i128>> {
        (0..self.order)
            .map(|u| (0..self.order).map(|v| self.is_adjacent(u, v) as i128).collect())
            .collect()
    }

    /// Edge-list text: optional `n=<order>` header, then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.order);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parses the edge-list format: one `u v` pair per line with 0-based labels,
/// blank lines and `#` comments ignored, and an optional `n=<order>` header.
/// Without a header the order is one more than the largest label.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=").or_else(|| line.strip_prefix("n =")) {
            if order.is_some() || !edges.is_empty() {
                return Err(err("the n=<order> header must come first".into()));
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| err(format!("bad order `{}`", rest.trim())))?;
            order = Some(n);
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut label = || -> Result<usize> {
            let tok = fields.next().ok_or_else(|| err("expected two vertex labels".into()))?;
            tok.parse::<usize>().map_err(|_| err(format!("bad vertex label `{tok}`")))
        };
        let (u, v) = (label()?, label()?);
        if fields.next().is_some() {
            return Err(err("expected exactly two vertex labels".into()));
        }
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        if let Some(n) = order {
            if u >= n || v >= n {
                return Err(err(format!("label exceeds declared order {n}")));
            }
        }
        edges.push((u, v));
    }
    let order = match order {
        Some(n) => n,
        None => edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: "no edges and no n=<order> header".into(),
            })?,
    };
    Graph::from_edges(order, edges)
}

/// Which defining property a rejected graph violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Regularity,
    /// adjacent vertices with a common neighbour, i.e. a triangle
    AdjacentCommonNeighbours,
    NonAdjacentCommonNeighbours,
    /// `k ≥ 3` and `k > c ≥ 1` fails (pentagon, complete bipartite, complete, ...)
    Degeneracy,
    /// `c² + 4(k−c)` is not the square of an integer with the parity of `c`
    Eigenvalues,
    /// derived `(q, c)` fails the feasibility oracle
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub axiom: Axiom,
    pub witness: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.axiom, self.detail)?;
        if let Some((u, v)) = self.witness {
            write!(f, " (witness {u}, {v})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrntCertificate {
    pub k: Int,
    pub c: Int,
    pub q: Int,
    pub s: Int,
    pub n: Int,
    pub matched_pair: ParamPair,
}

fn reject(axiom: Axiom, witness: Option<(usize, usize)>, detail: String) -> Rejection {
    Rejection { axiom, witness, detail }
}

/// Checks the defining properties and returns the parameters, or the first
/// violated property with a witness pair.
pub fn verify_srnt(g: &Graph) -> std::result::Result<SrntCertificate, Rejection> {
    let n = g.order();
    let k = g.degree(0);
    if let Some(v) = (1..n).find(|&v| g.degree(v) != k) {
        return Err(reject(
            Axiom::Regularity,
            Some((0, v)),
            format!("degree {} at vertex 0 but {} at vertex {v}", k, g.degree(v)),
        ));
    }

    let mut c: Option<(usize, (usize, usize))> = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = g.common_neighbours(u, v);
            if g.is_adjacent(u, v) {
                if common != 0 {
                    return Err(reject(
                        Axiom::AdjacentCommonNeighbours,
                        Some((u, v)),
                        format!("adjacent vertices share {common} neighbours"),
                    ));
                }
            } else {
                match c {
                    None => c = Some((common, (u, v))),
                    Some((expected, first)) if expected != common => {
                        return Err(reject(
                            Axiom::NonAdjacentCommonNeighbours,
                            Some((u, v)),
                            format!(
                                "non-adjacent pair shares {common} neighbours, but {first:?} shares {expected}"
                            ),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let Some((c, _)) = c else {
        return Err(reject(
            Axiom::Degeneracy,
            None,
            "no non-adjacent pairs, so c is undefined".into(),
        ));
    };
    if k < 3 || k <= c || c < 1 {
        return Err(reject(
            Axiom::Degeneracy,
            None,
            format!("need k >= 3 and k > c >= 1, got k = {k}, c = {c}"),
        ));
    }

    let (k, c) = (Int::from(k), Int::from(c));
    let disc = &c * &c + 4 * (&k - &c);
    if !is_square(&disc) {
        return Err(reject(
            Axiom::Eigenvalues,
            None,
            format!("c^2 + 4(k-c) = {disc} is not a perfect square"),
        ));
    }
    let s = isqrt(&disc).expect("non-negative");
    let gap: Int = &s - &c;
    if !(&gap % Int::from(2)).is_zero() {
        return Err(reject(
            Axiom::Eigenvalues,
            None,
            format!("s = {s} and c = {c} differ in parity"),
        ));
    }
    let q: Int = gap / 2;
    let pair = ParamPair::new(q.clone(), c.clone()).map_err(|e| reject(Axiom::Eigenvalues, None, e.to_string()))?;
    if !is_feasible(&pair) {
        return Err(reject(Axiom::Infeasible, None, format!("{pair} fails the feasibility oracle")));
    }
    Ok(SrntCertificate {
        k,
        c,
        q,
        s,
        n: Int::from(n),
        matched_pair: pair,
    })
}

/// `A² + cA − (k−c)I = cJ`, checked by exact integer matrix arithmetic.
pub fn satisfies_srg_identity(g: &Graph, k: i128, c: i128) -> bool {
    let a = g.adjacency_matrix();
    let sq = mat_mul(&a, &a);
    let n = g.order();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = sq[i][j] + c * a[i][j] - if i == j { k - c } else { 0 };
            lhs == c
        })
    })
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let mut out = vec![vec![0i128; n]; n];
    for i in 0..n {
        for (l, &ail) in a[i].iter().enumerate() {
            if ail == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

/// Induced subgraph on the vertices that are neither `v` nor adjacent to it,
/// in ascending label order.
pub fn second_subconstituent(g: &Graph, v: usize) -> Result<Graph> {
    if v >= g.order() {
        return Err(Error::domain(format!("vertex {v} not in 0..{}", g.order())));
    }
    verify_srnt(g).map_err(|r| Error::domain(format!("graph is not SRNT: {r}")))?;
    let far: Vec<usize> = (0..g.order())
        .filter(|&u| u != v && !g.is_adjacent(u, v))
        .collect();
    g.induced(&far)
}

/// Traces of `A⁰..A⁴` for the adjacency matrix of `g`.
pub fn traces(g: &Graph) -> [Int; 5] {
    let a = g.adjacency_matrix();
    let mut power: Vec<Vec<i128>> = (0..g.order())
        .map(|i| (0..g.order()).map(|j| (i == j) as i128).collect())
        .collect();
    std::array::from_fn(|i| {
        if i > 0 {
            power = mat_mul(&power, &a);
        }
        Int::from((0..g.order()).map(|d| power[d][d]).sum::<i128>())
    })
}

/// Whether `trace(Aⁱ) = Σ mult·eigⁱ` for `i = 0..=4`. A graph of the wrong
/// order fails at `i = 0`.
pub fn spectral_trace_check(g2: &Graph, spec: &SubconstituentSpectrum) -> Result<bool> {
    if spec.mults.iter().any(|m| as_integer(m).is_none()) {
        return Err(Error::domain(format!(
            "multiplicities for {} are not integral",
            spec.pair
        )));
    }
    let expected = power_sums_up_to::<5>(spec);
    Ok(traces(g2)
        .iter()
        .zip(&expected)
        .all(|(t, e)| as_integer(e).as_ref() == Some(t)))
}

/// Petersen graph: 2-subsets of `{0..4}` in lexicographic order, adjacent when
/// disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, edges).expect("valid construction")
}

/// Clebsch graph as the folded 5-cube: 4-bit words, adjacent when they differ
/// in one bit or are complements.
pub fn clebsch() -> Graph {
    let mut edges = Vec::new();
    for u in 0..16usize {
        for v in u + 1..16 {
            let diff = (u ^ v).count_ones();
            if diff == 1 || diff == 4 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(16, edges).expect("valid construction")
}

pub fn fixtures() -> Vec<(&'static str, Graph)> {
    vec![("petersen", petersen()), ("clebsch", clebsch())]
}

pub fn fixture(name: &str) -> Result<Graph> {
    fixtures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::n_of;
    use crate::subconstituent::subconstituent_spectrum;
    use crate::Rational;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn fixture_shapes() {
        let p = fixture("petersen").unwrap();
        assert_eq!((p.order(), p.edge_count()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        let c = fixture("clebsch").unwrap();
        assert_eq!((c.order(), c.edge_count()), (16, 40));
        assert!((0..16).all(|v| c.degree(v) == 5));
        assert!(matches!(fixture("hoffman-singleton"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn petersen_certifies() {
        let cert = verify_srnt(&petersen()).unwrap();
        assert_eq!(
            (cert.k, cert.c, cert.q, cert.s, cert.n),
            (int(3), int(1), int(1), int(3), int(10))
        );
        assert_eq!(cert.matched_pair, ParamPair::new(1, 1).unwrap());
    }

    #[test]
    fn clebsch_certifies() {
        let cert = verify_srnt(&clebsch()).unwrap();
        assert_eq!(
            (cert.k, cert.c, cert.q, cert.s, cert.n),
            (int(5), int(2), int(1), int(4), int(16))
        );
    }

    #[test]
    fn fixtures_match_vertex_count_formula() {
        for (name, g) in fixtures() {
            let cert = verify_srnt(&g).unwrap();
            assert!(is_feasible(&cert.matched_pair));
            assert_eq!(n_of(&cert.q, &cert.c), Rational::from_integer(cert.n), "{name}");
        }
    }

    #[test]
    fn rejections() {
        let r = verify_srnt(&complete_bipartite(3, 3)).unwrap_err();
        assert_eq!(r.axiom, Axiom::Degeneracy);

        // pentagon: k = 2
        assert_eq!(verify_srnt(&cycle(5)).unwrap_err().axiom, Axiom::Degeneracy);

        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(verify_srnt(&triangle).unwrap_err().axiom, Axiom::AdjacentCommonNeighbours);

        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let r = verify_srnt(&path).unwrap_err();
        assert_eq!((r.axiom, r.witness), (Axiom::Regularity, Some((0, 1))));

        // 8-cycle: non-adjacent pairs share 0 or 1 neighbours
        let r = verify_srnt(&cycle(8)).unwrap_err();
        assert_eq!(r.axiom, Axiom::NonAdjacentCommonNeighbours);
        assert!(r.witness.is_some());

        // cube: 3-regular, triangle-free, but antipodes share no neighbour
        let cube = Graph::from_edges(
            8,
            (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v),
        )
        .unwrap();
        assert_eq!(verify_srnt(&cube).unwrap_err().axiom, Axiom::NonAdjacentCommonNeighbours);
    }

    #[test]
    fn complete_bipartite_is_degenerate() {
        // c = k for every K_{m,m}
        for m in 3..6 {
            let r = verify_srnt(&complete_bipartite(m, m)).unwrap_err();
            assert_eq!(r.axiom, Axiom::Degeneracy);
        }
    }

    #[test]
    fn verification_matches_matrix_identity() {
        let mut graphs: Vec<Graph> = fixtures().into_iter().map(|(_, g)| g).collect();
        graphs.push(cycle(8));
        graphs.push(complete_bipartite(3, 3));
        graphs.push(second_subconstituent(&clebsch(), 0).unwrap());
        for g in graphs {
            let ok = verify_srnt(&g).is_ok();
            let k = g.degree(0) as i128;
            let c = (0..g.order())
                .flat_map(|u| (u + 1..g.order()).map(move |v| (u, v)))
                .find(|&(u, v)| !g.is_adjacent(u, v))
                .map(|(u, v)| g.common_neighbours(u, v) as i128)
                .unwrap_or(0);
            let identity = satisfies_srg_identity(&g, k, c) && k >= 3 && k > c && c >= 1;
            assert_eq!(ok, identity, "{g:?}");
        }
    }

    #[test]
    fn petersen_second_subconstituent_is_a_hexagon() {
        let g = petersen();
        for v in 0..10 {
            let x2 = second_subconstituent(&g, v).unwrap();
            assert_eq!(x2.order(), 6);
            assert!((0..6).all(|u| x2.degree(u) == 2));
            assert!(x2.is_connected());
        }
        let x2 = second_subconstituent(&g, 0).unwrap();
        let spec = subconstituent_spectrum(&ParamPair::new(1, 1).unwrap()).unwrap();
        assert_eq!(traces(&x2)[..4], [int(6), int(0), int(12), int(0)]);
        assert!(spectral_trace_check(&x2, &spec).unwrap());
    }

    #[test]
    fn clebsch_second_subconstituent_is_petersen_like() {
        let g = clebsch();
        let spec = subconstituent_spectrum(&ParamPair::new(1, 2).unwrap()).unwrap();
        for v in 0..16 {
            let x2 = second_subconstituent(&g, v).unwrap();
            assert_eq!(x2.order(), 10);
            assert!((0..10).all(|u| x2.degree(u) == 3));
            assert!(x2.is_connected());
            let cert = verify_srnt(&x2).unwrap();
            assert_eq!(cert.matched_pair, ParamPair::new(1, 1).unwrap());
            assert!(spectral_trace_check(&x2, &spec).unwrap());
        }
    }

    #[test]
    fn trace_check_rejects_wrong_spectrum() {
        let spec = subconstituent_spectrum(&ParamPair::new(2, 6).unwrap()).unwrap();
        assert!(!spectral_trace_check(&cycle(6), &spec).unwrap());
        let spec = subconstituent_spectrum(&ParamPair::new(1, 1).unwrap()).unwrap();
        // two triangles: right order and degree, wrong traces
        let triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!spectral_trace_check(&triangles, &spec).unwrap());
        // (2,3) has fractional multiplicities
        let spec = subconstituent_spectrum(&ParamPair::new(2, 3).unwrap()).unwrap();
        assert!(spectral_trace_check(&cycle(6), &spec).is_err());
    }

    #[test]
    fn second_subconstituent_needs_srnt_input() {
        assert!(second_subconstituent(&cycle(8), 0).is_err());
        assert!(second_subconstituent(&petersen(), 10).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# pentagon\n\n0 1\n1 2 # inline\n2 3\n3 4\n4 0\n").unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 5));

        let g = parse_edge_list("n=7\n0 1\n").unwrap();
        assert_eq!(g.order(), 7);

        let round = parse_edge_list(&petersen().to_edge_list()).unwrap();
        assert_eq!(round, petersen());

        assert!(matches!(parse_edge_list("0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\nx 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("n=3\n0 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("# nothing\n").is_err());
    }
}
