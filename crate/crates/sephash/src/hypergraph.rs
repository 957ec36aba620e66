//! Hypergraph views of code matrices: linearity, forbidden configurations, and extraction.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, ParseError};
use crate::matrix::CodeMatrix;
use crate::violation::{RainbowCycle, Violation};

/// An r-partite r-uniform hypergraph with equal part ranges; edges pick one
/// symbol per part, so edges are exactly the columns of a code matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartiteHypergraph {
    r: usize,
    part_size: u32,
    edges: Vec<Vec<u32>>,
}

impl PartiteHypergraph {
    /// Builds a partite hypergraph; each edge lists one symbol in 1..=part_size per part.
    pub fn from_edges(r: usize, part_size: u32, edges: Vec<Vec<u32>>) -> Result<Self, Error> {
        if r == 0 {
            return Err(Error::ParameterRange {
                name: "r",
                value: 0,
                min: 1,
            });
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.len() != r {
                return Err(Error::EdgeSize {
                    edge: e,
                    expected: r,
                    actual: edge.len(),
                });
            }
            for (part, &symbol) in edge.iter().enumerate() {
                if symbol == 0 || symbol > part_size {
                    return Err(Error::EntryOutOfRange {
                        row: part,
                        col: e,
                        value: symbol,
                        alphabet: part_size,
                    });
                }
            }
        }
        Ok(PartiteHypergraph {
            r,
            part_size,
            edges,
        })
    }

    /// Number of parts, equal to the uniformity.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Symbols available in each part.
    pub fn part_size(&self) -> u32 {
        self.part_size
    }

    /// The edges, one symbol per part.
    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    // Parts where two edges carry the same symbol.
    fn agreement(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.r)
            .filter(|&p| self.edges[i][p] == self.edges[j][p])
            .collect()
    }
}

/// Reads a matrix as a partite hypergraph: rows become parts, columns become edges.
pub fn matrix_to_hypergraph(m: &CodeMatrix) -> PartiteHypergraph {
    PartiteHypergraph {
        r: m.rows(),
        part_size: m.alphabet(),
        edges: m.columns().map(|c| c.to_vec()).collect(),
    }
}

/// Reads a partite hypergraph back as a matrix: parts become rows, edges become columns.
pub fn hypergraph_to_matrix(g: &PartiteHypergraph) -> CodeMatrix {
    CodeMatrix::from_columns(g.part_size, g.r, &g.edges)
        .expect("partite hypergraph invariants match matrix invariants")
}

/// Checks that no two edges share two or more vertices; reports the first offending pair.
pub fn is_linear(g: &PartiteHypergraph) -> Option<Violation> {
    for i in 0..g.edges.len() {
        for j in i + 1..g.edges.len() {
            let rows = g.agreement(i, j);
            if rows.len() >= 2 {
                return Some(Violation::PairAgreement {
                    first: i,
                    second: j,
                    rows,
                });
            }
        }
    }
    None
}

/// Looks for three edges that pairwise share exactly one vertex, with the three
/// shared vertices lying in pairwise distinct parts. Only defined for r = 3.
pub fn find_triangle(g: &PartiteHypergraph) -> Result<Option<Violation>, Error> {
    if g.r != 3 {
        return Err(Error::Uniformity {
            expected: 3,
            actual: g.r,
        });
    }
    let n = g.edges.len();
    for i in 0..n {
        for j in i + 1..n {
            let ij = g.agreement(i, j);
            if ij.len() != 1 {
                continue;
            }
            for k in j + 1..n {
                let ik = g.agreement(i, k);
                let jk = g.agreement(j, k);
                if ik.len() == 1
                    && jk.len() == 1
                    && ij[0] != ik[0]
                    && ij[0] != jk[0]
                    && ik[0] != jk[0]
                {
                    return Ok(Some(Violation::Triangle { edges: [i, j, k] }));
                }
            }
        }
    }
    Ok(None)
}

/// Looks for a Berge cycle of length 3..=r whose shared vertices lie in pairwise
/// distinct parts. The hypergraph must be linear; the first cycle in depth-first
/// order over ascending edge indices is reported.
pub fn find_rainbow_cycle(g: &PartiteHypergraph) -> Result<Option<Violation>, Error> {
    if let Some(Violation::PairAgreement { first, second, .. }) = is_linear(g) {
        return Err(Error::NotLinear { first, second });
    }
    let n = g.edges.len();
    // shared[i][j] = the one part where edges i and j agree, if any
    let shared: Vec<Vec<Option<usize>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        None
                    } else {
                        g.agreement(i, j).first().copied()
                    }
                })
                .collect()
        })
        .collect();

    struct Dfs<'a> {
        g: &'a PartiteHypergraph,
        shared: &'a [Vec<Option<usize>>],
        start: usize,
        path: Vec<usize>,
        used_parts: Vec<bool>,
    }

    impl Dfs<'_> {
        fn walk(&mut self) -> Option<RainbowCycle> {
            let last = *self.path.last().expect("path holds the start edge");
            if self.path.len() >= 3 {
                if let Some(part) = self.shared[last][self.start] {
                    if !self.used_parts[part] {
                        return Some(self.close(part));
                    }
                }
            }
            if self.path.len() == self.g.r() {
                return None;
            }
            for next in self.start + 1..self.g.edges().len() {
                if self.path.contains(&next) {
                    continue;
                }
                let Some(part) = self.shared[last][next] else {
                    continue;
                };
                if self.used_parts[part] {
                    continue;
                }
                self.path.push(next);
                self.used_parts[part] = true;
                let found = self.walk();
                self.used_parts[part] = false;
                self.path.pop();
                if found.is_some() {
                    return found;
                }
            }
            None
        }

        fn close(&self, closing_part: usize) -> RainbowCycle {
            let k = self.path.len();
            let mut vertices = Vec::with_capacity(k);
            vertices.push((
                closing_part,
                self.g.edges()[self.start][closing_part],
            ));
            for i in 1..k {
                let part = self.shared[self.path[i - 1]][self.path[i]]
                    .expect("consecutive path edges share a vertex");
                vertices.push((part, self.g.edges()[self.path[i]][part]));
            }
            RainbowCycle {
                edges: self.path.clone(),
                vertices,
            }
        }
    }

    for start in 0..n {
        let mut dfs = Dfs {
            g,
            shared: &shared,
            start,
            path: vec![start],
            used_parts: vec![false; g.r()],
        };
        if let Some(cycle) = dfs.walk() {
            return Ok(Some(Violation::Rainbow(cycle)));
        }
    }
    Ok(None)
}

/// Checks that every choice of `e` edges spans at least v + 1 distinct vertices.
pub fn is_gve_free(g: &PartiteHypergraph, v: usize, e: usize) -> Result<Option<Violation>, Error> {
    if v < 1 {
        return Err(Error::ParameterRange {
            name: "v",
            value: v as u64,
            min: 1,
        });
    }
    if e < 1 {
        return Err(Error::ParameterRange {
            name: "e",
            value: e as u64,
            min: 1,
        });
    }
    let n = g.edges.len();
    if e > n {
        return Ok(None);
    }
    // split on the first edge index; each task scans its subsets in lexicographic order
    let hits: Vec<Option<Violation>> = (0..=n - e)
        .into_par_iter()
        .map(|first| {
            let mut subset: Vec<usize> = (first..first + e).collect();
            loop {
                let spanned = span(g, &subset);
                if spanned <= v {
                    return Some(Violation::EdgeSpan {
                        edges: subset,
                        spanned,
                    });
                }
                if !next_combination_from(&mut subset, n, first) {
                    return None;
                }
            }
        })
        .collect();
    Ok(hits.into_iter().flatten().next())
}

fn span(g: &PartiteHypergraph, subset: &[usize]) -> usize {
    let mut vertices: Vec<(usize, u32)> = subset
        .iter()
        .flat_map(|&e| {
            g.edges[e]
                .iter()
                .enumerate()
                .map(|(part, &symbol)| (part, symbol))
        })
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    vertices.len()
}

// Advances a combination whose first entry stays fixed.
fn next_combination_from(indices: &mut [usize], n: usize, first: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 1 {
        i -= 1;
        if indices[i] + 1 <= n - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    debug_assert_eq!(indices[0], first);
    false
}

/// An r-uniform hypergraph on vertices 1..=n given by an explicit edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
}

impl UniformHypergraph {
    /// Builds a hypergraph; each edge lists r distinct vertices in 1..=n.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<u32>>) -> Result<Self, Error> {
        if r == 0 {
            return Err(Error::ParameterRange {
                name: "r",
                value: 0,
                min: 1,
            });
        }
        for (e, edge) in edges.iter().enumerate() {
            if edge.len() != r {
                return Err(Error::EdgeSize {
                    edge: e,
                    expected: r,
                    actual: edge.len(),
                });
            }
            let mut sorted = edge.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::DuplicateVertex {
                        edge: e,
                        vertex: pair[0],
                    });
                }
            }
            for &vertex in edge {
                if vertex == 0 || vertex as usize > n {
                    return Err(Error::VertexOutOfRange {
                        edge: e,
                        vertex,
                        n,
                    });
                }
            }
        }
        Ok(UniformHypergraph { n, r, edges })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformity r.
    pub fn r(&self) -> usize {
        self.r
    }

    /// The edge list.
    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// Parses the `HG` edge-list text format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::Header {
            expected: "HG r n m",
            found: String::new(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.first() != Some(&"HG") {
            return Err(ParseError::Header {
                expected: "HG r n m",
                found: header.trim_end().to_string(),
            });
        }
        if fields.len() != 4 {
            return Err(ParseError::BadDimensions {
                line: 1,
                expected: "HG followed by three integers r n m",
                found: header.trim_end().to_string(),
            });
        }
        let parse_dim = |text: &str, column: usize| -> Result<u64, ParseError> {
            text.parse::<u64>().map_err(|_| ParseError::BadToken {
                line: 1,
                column,
                token: text.to_string(),
            })
        };
        let r = parse_dim(fields[1], 2)? as usize;
        let n = parse_dim(fields[2], 3)? as usize;
        let m = parse_dim(fields[3], 4)? as usize;
        let mut edges: Vec<Vec<u32>> = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if edges.len() == m {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(ParseError::TrailingContent { line: line_no });
            }
            let mut edge = Vec::with_capacity(r);
            for (col, token) in line.split_whitespace().enumerate() {
                let value: u64 = token.parse().map_err(|_| ParseError::BadToken {
                    line: line_no,
                    column: col + 1,
                    token: token.to_string(),
                })?;
                if value == 0 || value > n as u64 {
                    return Err(ParseError::SymbolRange {
                        line: line_no,
                        column: col + 1,
                        value,
                        max: n as u64,
                    });
                }
                edge.push(value as u32);
            }
            if edge.len() != r {
                return Err(ParseError::WidthMismatch {
                    line: line_no,
                    expected: r,
                    actual: edge.len(),
                });
            }
            edges.push(edge);
        }
        if edges.len() != m {
            return Err(ParseError::MissingRows {
                line: edges.len() + 2,
                expected: m,
                actual: edges.len(),
            });
        }
        UniformHypergraph::new(n, r, edges).map_err(|e| ParseError::Invalid {
            line: 1,
            message: e.to_string(),
        })
    }
}

impl std::fmt::Display for UniformHypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "HG {} {} {}", self.r, self.n, self.edges.len())?;
        for edge in &self.edges {
            let line: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// What a partite extraction produced and how it compares to the guaranteed yield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractResult {
    /// The extracted partite hypergraph over the renamed vertices.
    pub partite: PartiteHypergraph,
    /// Original indices of the edges that survived, ascending.
    pub kept: Vec<usize>,
    /// For each original vertex (by id minus one), its part and symbol.
    pub assignment: Vec<(usize, u32)>,
    /// Number of surviving edges.
    pub achieved: usize,
    /// Guaranteed yield ceil(m * r! / r^r).
    pub target: usize,
    pub met_target: bool,
}

/// Number of random balanced partitions tried by [`extract_partite`].
pub const EXTRACT_BUDGET: u64 = 1000;

const MAX_EXTRACT_R: usize = 20;

/// Randomly partitions the vertices into r near-equal parts and keeps the edges
/// with one vertex per part, retrying under a fixed budget and returning the
/// best attempt. Deterministic for a fixed seed.
pub fn extract_partite(h: &UniformHypergraph, seed: u64) -> Result<ExtractResult, Error> {
    let r = h.r();
    if r > MAX_EXTRACT_R {
        return Err(Error::ExtractUniformity {
            r,
            max: MAX_EXTRACT_R,
        });
    }
    let n = h.n();
    let quota = n / r;
    let extra = n % r;
    let sizes: Vec<usize> = (0..r)
        .map(|p| if p < extra { quota + 1 } else { quota })
        .collect();

    let partition_for = |stream: u64| -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut vertices: Vec<usize> = (0..n).collect();
        vertices.shuffle(&mut rng);
        let mut part_of = vec![0usize; n];
        let mut cursor = 0;
        for (p, &size) in sizes.iter().enumerate() {
            for &v in &vertices[cursor..cursor + size] {
                part_of[v] = p;
            }
            cursor += size;
        }
        part_of
    };
    let count_kept = |part_of: &[usize]| -> usize {
        h.edges()
            .iter()
            .filter(|edge| {
                let mut seen = vec![false; r];
                edge.iter().all(|&v| {
                    let p = part_of[v as usize - 1];
                    !std::mem::replace(&mut seen[p], true)
                })
            })
            .count()
    };

    let mut best_stream = 0;
    let mut best_count = 0;
    for stream in 0..EXTRACT_BUDGET {
        let count = count_kept(&partition_for(stream));
        if count > best_count {
            best_count = count;
            best_stream = stream;
        }
    }

    let part_of = partition_for(best_stream);
    // symbols are ranks within each part, ordered by original vertex id
    let mut assignment: Vec<(usize, u32)> = vec![(0, 0); n];
    let mut next_symbol = vec![0u32; r];
    for v in 0..n {
        let p = part_of[v];
        next_symbol[p] += 1;
        assignment[v] = (p, next_symbol[p]);
    }
    let mut kept = Vec::new();
    let mut edges = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        let mut symbols = vec![0u32; r];
        let mut transversal = true;
        for &v in edge {
            let (p, s) = assignment[v as usize - 1];
            if symbols[p] != 0 {
                transversal = false;
                break;
            }
            symbols[p] = s;
        }
        if transversal {
            kept.push(e);
            edges.push(symbols);
        }
    }
    let part_size = if extra > 0 { quota + 1 } else { quota };
    let partite = PartiteHypergraph::from_edges(r, part_size.max(1) as u32, edges)?;
    let m = h.edges().len() as u128;
    let factorial: u128 = (1..=r as u128).product();
    let power = (r as u128).pow(r as u32);
    let target = ((m * factorial + power - 1) / power) as usize;
    let achieved = kept.len();
    Ok(ExtractResult {
        partite,
        kept,
        assignment,
        achieved,
        target,
        met_target: achieved >= target,
    })
}

/// A cycle in a Hamming graph whose edges change pairwise distinct coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingCycle {
    /// The cycle's vertices as coordinate vectors over 1..=q.
    pub vertices: Vec<Vec<u32>>,
    /// The coordinate changed by each step, closing step last.
    pub colors: Vec<usize>,
}

const MAX_HAMMING_VERTICES: u64 = 100_000;

/// Searches the Hamming graph on q^k coordinate vectors, edges colored by the
/// coordinate they change, for a cycle with pairwise distinct edge colors.
pub fn hamming_rainbow_check(k: usize, q: u32) -> Result<Option<HammingCycle>, Error> {
    let vertices = (u128::from(q)).checked_pow(k as u32);
    match vertices {
        Some(v) if v <= u128::from(MAX_HAMMING_VERTICES) => {}
        other => {
            return Err(Error::HammingGuard {
                vertices: other.unwrap_or(u128::MAX),
                max: MAX_HAMMING_VERTICES,
            })
        }
    }
    if k <= 2 || q < 2 {
        // a cycle has at least three edges, so it needs three distinct coordinates
        return Ok(None);
    }
    let total = (q as u64).pow(k as u32) as usize;

    struct Dfs {
        k: usize,
        q: usize,
        start: usize,
        path: Vec<usize>,
        used: Vec<bool>,
    }

    impl Dfs {
        fn digit(&self, v: usize, c: usize) -> usize {
            v / self.q.pow(c as u32) % self.q
        }

        fn walk(&mut self) -> Option<(Vec<usize>, Vec<usize>)> {
            let cur = *self.path.last().expect("path holds the start vertex");
            for c in 0..self.k {
                if self.used[c] {
                    continue;
                }
                let step = self.q.pow(c as u32);
                let base = cur - self.digit(cur, c) * step;
                for x in 0..self.q {
                    let next = base + x * step;
                    if next == cur {
                        continue;
                    }
                    if next == self.start {
                        if self.path.len() >= 3 {
                            let mut colors = self.path_colors();
                            colors.push(c);
                            return Some((self.path.clone(), colors));
                        }
                        continue;
                    }
                    if next < self.start || self.path.contains(&next) {
                        continue;
                    }
                    // closing later must fix every coordinate where `next` still
                    // differs from the start, spending one unused color each
                    self.used[c] = true;
                    let feasible = (0..self.k)
                        .all(|d| !self.used[d] || self.digit(next, d) == self.digit(self.start, d));
                    let found = if feasible {
                        self.path.push(next);
                        let found = self.walk();
                        self.path.pop();
                        found
                    } else {
                        None
                    };
                    self.used[c] = false;
                    if found.is_some() {
                        return found;
                    }
                }
            }
            None
        }

        fn path_colors(&self) -> Vec<usize> {
            self.path
                .windows(2)
                .map(|pair| {
                    (0..self.k)
                        .find(|&c| self.digit(pair[0], c) != self.digit(pair[1], c))
                        .expect("consecutive vertices differ")
                })
                .collect()
        }
    }

    for start in 0..total {
        let mut dfs = Dfs {
            k,
            q: q as usize,
            start,
            path: vec![start],
            used: vec![false; k],
        };
        if let Some((path, colors)) = dfs.walk() {
            let vertices = path
                .iter()
                .map(|&v| (0..k).map(|c| dfs.digit(v, c) as u32 + 1).collect())
                .collect();
            return Ok(Some(HammingCycle { vertices, colors }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CodeMatrix;

    fn triangle_graph() -> PartiteHypergraph {
        let m = CodeMatrix::from_rows(
            6,
            &[vec![1, 2, 1], vec![3, 3, 4], vec![5, 6, 6]],
        )
        .unwrap();
        matrix_to_hypergraph(&m)
    }

    #[test]
    fn matrix_round_trip() {
        let m = CodeMatrix::from_rows(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let g = matrix_to_hypergraph(&m);
        assert_eq!(g.r(), 2);
        assert_eq!(g.part_size(), 4);
        assert_eq!(g.edges(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(hypergraph_to_matrix(&g), m);
    }

    #[test]
    fn linear_detects_double_agreement() {
        let g = PartiteHypergraph::from_edges(
            2,
            3,
            vec![vec![1, 2], vec![1, 2], vec![1, 3]],
        )
        .unwrap();
        assert_eq!(
            is_linear(&g),
            Some(Violation::PairAgreement {
                first: 0,
                second: 1,
                rows: vec![0, 1]
            })
        );
        assert!(is_linear(&triangle_graph()).is_none());
    }

    #[test]
    fn triangle_found_in_triangle_graph() {
        assert_eq!(
            find_triangle(&triangle_graph()).unwrap(),
            Some(Violation::Triangle { edges: [0, 1, 2] })
        );
        let two_parts = PartiteHypergraph::from_edges(2, 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(
            find_triangle(&two_parts),
            Err(Error::Uniformity {
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn triangle_requires_distinct_shared_parts() {
        // three edges through one shared vertex in part 0: not a triangle
        let g = PartiteHypergraph::from_edges(
            3,
            3,
            vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 3, 3]],
        )
        .unwrap();
        assert_eq!(find_triangle(&g).unwrap(), None);
    }

    #[test]
    fn rainbow_cycle_in_triangle_graph() {
        let hit = find_rainbow_cycle(&triangle_graph()).unwrap();
        let Some(Violation::Rainbow(cycle)) = hit else {
            panic!("expected a rainbow cycle, got {hit:?}");
        };
        assert_eq!(cycle.edges, vec![0, 1, 2]);
        assert_eq!(cycle.vertices, vec![(0, 1), (1, 3), (2, 6)]);
    }

    #[test]
    fn rainbow_requires_linear_input() {
        let g = PartiteHypergraph::from_edges(
            2,
            3,
            vec![vec![1, 2], vec![1, 2]],
        )
        .unwrap();
        assert_eq!(
            find_rainbow_cycle(&g),
            Err(Error::NotLinear { first: 0, second: 1 })
        );
    }

    #[test]
    fn rainbow_ignores_repeated_parts() {
        // a 4-cycle alternating between two parts is not rainbow
        let g = PartiteHypergraph::from_edges(
            4,
            4,
            vec![
                vec![1, 1, 1, 1],
                vec![1, 2, 2, 2],
                vec![3, 2, 3, 3],
                vec![3, 4, 1, 4],
            ],
        )
        .unwrap();
        // e0-e1 share part 0, e1-e2 share part 1, e2-e3 share part 0, e3-e0 share part 2
        assert_eq!(find_rainbow_cycle(&g).unwrap(), None);
    }

    #[test]
    fn gve_triangle_spans_six() {
        let g = triangle_graph();
        assert_eq!(
            is_gve_free(&g, 6, 3).unwrap(),
            Some(Violation::EdgeSpan {
                edges: vec![0, 1, 2],
                spanned: 6
            })
        );
        assert_eq!(is_gve_free(&g, 5, 3).unwrap(), None);
        assert_eq!(is_gve_free(&g, 6, 4).unwrap(), None); // only 3 edges exist
        assert!(is_gve_free(&g, 0, 3).is_err());
    }

    #[test]
    fn hg_parse_round_trip() {
        let text = "HG 3 5 2\n1 2 3\n3 4 5\n";
        let h = UniformHypergraph::parse(text).unwrap();
        assert_eq!(h.r(), 3);
        assert_eq!(h.n(), 5);
        assert_eq!(h.edges().len(), 2);
        assert_eq!(h.to_string(), text);
    }

    #[test]
    fn hg_parse_errors() {
        assert!(matches!(
            UniformHypergraph::parse("XX 3 5 2\n"),
            Err(ParseError::Header { .. })
        ));
        assert_eq!(
            UniformHypergraph::parse("HG 3 5 1\n1 2 6\n"),
            Err(ParseError::SymbolRange {
                line: 2,
                column: 3,
                value: 6,
                max: 5
            })
        );
        assert_eq!(
            UniformHypergraph::parse("HG 3 5 1\n1 2\n"),
            Err(ParseError::WidthMismatch {
                line: 2,
                expected: 3,
                actual: 2
            })
        );
        assert!(matches!(
            UniformHypergraph::parse("HG 3 5 1\n1 2 2\n"),
            Err(ParseError::Invalid { .. })
        ));
    }

    #[test]
    fn extract_is_deterministic_and_consistent() {
        let text = "HG 3 9 6\n1 2 3\n4 5 6\n7 8 9\n1 4 7\n2 5 8\n1 5 9\n";
        let h = UniformHypergraph::parse(text).unwrap();
        let a = extract_partite(&h, 7).unwrap();
        let b = extract_partite(&h, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.achieved, a.kept.len());
        assert_eq!(a.target, 2); // ceil(6 * 6 / 27)
        // every kept edge is transversal under the reported assignment
        for (kept_pos, &e) in a.kept.iter().enumerate() {
            let mut parts: Vec<usize> = h.edges()[e]
                .iter()
                .map(|&v| a.assignment[v as usize - 1].0)
                .collect();
            parts.sort_unstable();
            parts.dedup();
            assert_eq!(parts.len(), 3);
            for &v in &h.edges()[e] {
                let (p, s) = a.assignment[v as usize - 1];
                assert_eq!(a.partite.edges()[kept_pos][p], s);
            }
        }
        let other = extract_partite(&h, 8).unwrap();
        assert_eq!(other.achieved, other.kept.len());
    }

    #[test]
    fn extract_symbols_rank_within_parts() {
        let h = UniformHypergraph::new(4, 2, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let result = extract_partite(&h, 1).unwrap();
        // two parts of two vertices each; symbols are 1 and 2 within each part
        let mut per_part = vec![Vec::new(), Vec::new()];
        for &(p, s) in &result.assignment {
            per_part[p].push(s);
        }
        for symbols in per_part {
            assert_eq!(symbols, vec![1, 2]);
        }
    }

    #[test]
    fn hamming_small_graphs_have_no_rainbow_cycle() {
        assert_eq!(hamming_rainbow_check(1, 5).unwrap(), None);
        assert_eq!(hamming_rainbow_check(2, 9).unwrap(), None);
        assert_eq!(hamming_rainbow_check(3, 4).unwrap(), None);
        assert_eq!(hamming_rainbow_check(4, 3).unwrap(), None);
    }

    #[test]
    fn hamming_guard_rejects_large_graphs() {
        assert!(matches!(
            hamming_rainbow_check(10, 4),
            Err(Error::HammingGuard { .. })
        ));
    }
}
