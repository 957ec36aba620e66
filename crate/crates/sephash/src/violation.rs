//! Structured witnesses returned by checkers when a property fails.

use std::fmt;

/// A rainbow Berge cycle: alternating edges and shared vertices with pairwise distinct parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowCycle {
    /// Edge indices around the cycle.
    pub edges: Vec<usize>,
    /// `vertices[i]` is the (part, symbol) shared by `edges[i]` and the previous edge.
    pub vertices: Vec<(usize, u32)>,
}

/// Why a checked property fails, with enough indices to point at the offending object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// No row separates these disjoint column sets.
    Unseparated { parts: Vec<Vec<usize>> },
    /// No row is injective on these columns.
    RepeatedRestriction { columns: Vec<usize> },
    /// Two columns agree in more than one row.
    PairAgreement {
        first: usize,
        second: usize,
        rows: Vec<usize>,
    },
    /// Three edges pairwise sharing one vertex, with the shared vertices in distinct parts.
    Triangle { edges: [usize; 3] },
    /// A rainbow Berge cycle.
    Rainbow(RainbowCycle),
    /// A set of edges spanning too few vertices.
    EdgeSpan { edges: Vec<usize>, spanned: usize },
    /// A non-constant assignment satisfying one of the defining equations.
    EquationSolution {
        coefficients: Vec<i64>,
        values: Vec<u64>,
    },
    /// A word whose candidate parent sets share no common column.
    IppAmbiguous {
        word: Vec<u32>,
        parents: Vec<Vec<usize>>,
    },
}

impl Violation {
    /// Short machine-friendly name of the violation kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Unseparated { .. } => "unseparated",
            Violation::RepeatedRestriction { .. } => "repeated-restriction",
            Violation::PairAgreement { .. } => "pair-agreement",
            Violation::Triangle { .. } => "triangle",
            Violation::Rainbow(_) => "rainbow-cycle",
            Violation::EdgeSpan { .. } => "edge-span",
            Violation::EquationSolution { .. } => "equation-solution",
            Violation::IppAmbiguous { .. } => "ipp-ambiguous",
        }
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn one_based(columns: &[usize]) -> String {
    join(columns.iter().map(|c| c + 1), ",")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unseparated { parts } => {
                let rendered = join(parts.iter().map(|p| format!("{{{}}}", one_based(p))), " ");
                write!(f, "no row separates the parts {rendered}")
            }
            Violation::RepeatedRestriction { columns } => {
                write!(
                    f,
                    "no row is injective on columns {{{}}}",
                    one_based(columns)
                )
            }
            Violation::PairAgreement {
                first,
                second,
                rows,
            } => write!(
                f,
                "columns {} and {} agree in rows {}",
                first + 1,
                second + 1,
                join(rows.iter().map(|r| r + 1), ","),
            ),
            Violation::Triangle { edges } => write!(
                f,
                "edges {}, {}, {} form a triangle",
                edges[0] + 1,
                edges[1] + 1,
                edges[2] + 1,
            ),
            Violation::Rainbow(cycle) => {
                let steps = join(
                    cycle
                        .edges
                        .iter()
                        .zip(&cycle.vertices)
                        .map(|(e, (part, sym))| format!("{}(part {}, symbol {})", e + 1, part + 1, sym)),
                    " -> ",
                );
                write!(f, "rainbow cycle of length {}: {}", cycle.edges.len(), steps)
            }
            Violation::EdgeSpan { edges, spanned } => write!(
                f,
                "edges {{{}}} span only {} vertices",
                one_based(edges),
                spanned,
            ),
            Violation::EquationSolution {
                coefficients,
                values,
            } => {
                let terms = join(
                    coefficients
                        .iter()
                        .zip(values)
                        .map(|(c, v)| format!("{c}*{v}")),
                    " + ",
                );
                write!(f, "equation solution: {terms} = 0")
            }
            Violation::IppAmbiguous { word, parents } => {
                let sets = join(
                    parents.iter().map(|p| format!("{{{}}}", one_based(p))),
                    " and ",
                );
                write!(
                    f,
                    "word ({}) is described by the disjoint parent sets {}",
                    join(word.iter(), ","),
                    sets,
                )
            }
        }
    }
}
