//! Error types for library operations and file parsing.

use thiserror::Error;

/// Usage and precondition errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a matrix needs at least one row")]
    NoRows,
    #[error("alphabet size must be at least 1")]
    ZeroAlphabet,
    #[error("row {row} has {actual} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        actual: usize,
    },
    #[error("entry {value} at row {row}, column {col} is outside 1..={alphabet}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u32,
        alphabet: u32,
    },
    #[error("row index {index} out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
    #[error("column {column} appears in more than one part")]
    OverlappingParts { column: usize },
    #[error("a separation type needs at least one weight")]
    EmptyType,
    #[error("separation type weights must be at least 1")]
    ZeroWeight,
    #[error("cannot group {rows} rows into {target} blocks")]
    TargetRows { target: usize, rows: usize },
    #[error("encoded alphabet size {size} exceeds the supported maximum {max}")]
    AlphabetTooLarge { size: u128, max: u32 },
    #[error("at least one row must be chosen")]
    NoChosenRows,
    #[error("row {index} chosen more than once")]
    DuplicateRow { index: usize },
    #[error("weight index {index} out of range for a type with {count} weights")]
    WeightIndex { index: usize, count: usize },
    #[error("decrementing the only weight of type {{1}} leaves an empty type")]
    DecrementEmptiesType,
    #[error(
        "choosing all rows leaves a 0-row matrix with {remaining} columns, \
         which exceeds the exhaustion threshold u-1 = {threshold}"
    )]
    RowlessRemainder { remaining: usize, threshold: u64 },
    #[error("columns {first} and {second} are identical words; a code is a set of words")]
    DuplicateColumns { first: usize, second: usize },
    #[error(
        "IPP check limited to n <= {max_cols} columns, N <= {max_rows} rows, t <= {max_t} \
         (got n = {cols}, N = {rows}, t = {t})"
    )]
    IppGuard {
        cols: usize,
        rows: usize,
        t: usize,
        max_cols: usize,
        max_rows: usize,
        max_t: usize,
    },
    #[error("pairwise agreement needs at least two columns, got {cols}")]
    TwoColumnsRequired { cols: usize },
    #[error("parameter {name} = {value} must be at least {min}")]
    ParameterRange {
        name: &'static str,
        value: u64,
        min: u64,
    },
    #[error("no finite bound for a type with u = {u}; u must be at least 2")]
    TypeTooSmall { u: u64 },
    #[error("bound exponent {exponent} is too large to evaluate")]
    ExponentTooLarge { exponent: u64 },
    #[error("equation {index} is not homogeneous (coefficients sum to {sum})")]
    NotHomogeneous { index: usize, sum: i64 },
    #[error("equation {index} has all-zero coefficients")]
    ZeroEquation { index: usize },
    #[error("sum-free order r = {r} must be at least 2")]
    SumFreeOrder { r: u64 },
    #[error("an R-sum-free base set needs at least 3 elements, got {len}")]
    RSetTooSmall { len: usize },
    #[error("duplicate element {value} in a set argument")]
    DuplicateValue { value: u64 },
    #[error("exhaustive search limited to limit <= {max}, got {limit}")]
    SearchGuard { limit: u64, max: u64 },
    #[error("operation requires a {expected}-uniform hypergraph, got uniformity {actual}")]
    Uniformity { expected: usize, actual: usize },
    #[error("hypergraph is not linear: edges {first} and {second} share two or more vertices")]
    NotLinear { first: usize, second: usize },
    #[error("edge {edge} has {actual} vertices, expected {expected}")]
    EdgeSize {
        edge: usize,
        expected: usize,
        actual: usize,
    },
    #[error("edge {edge} references vertex {vertex}, outside 1..={n}")]
    VertexOutOfRange { edge: usize, vertex: u32, n: usize },
    #[error("edge {edge} repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: u32 },
    #[error("uniformity r = {r} too large for partite extraction (limit {max})")]
    ExtractUniformity { r: usize, max: usize },
    #[error("Hamming graph with {vertices} vertices exceeds the search guard {max}")]
    HammingGuard { vertices: u128, max: u64 },
    #[error("q = {q} is not prime; nearest prime is {nearest}")]
    NotPrime { q: u64, nearest: u64 },
    #[error("tangent {value} out of range for modulus {q}")]
    TangentRange { value: u64, q: u64 },
    #[error("multiplier {value} out of range for modulus {q}")]
    MultiplierRange { value: u64, q: u64 },
    #[error("tangent set must be non-empty")]
    EmptyTangents,
    #[error("multiplier set must be non-empty")]
    EmptyMultipliers,
    #[error("q = {q} too small; this construction needs q >= {needed}")]
    QTooSmall { q: u64, needed: u64 },
    #[error("projection construction needs N >= 2 and q >= 2 (got N = {rows}, q = {q})")]
    ProjectionParams { rows: usize, q: u32 },
    #[error("projection index {index} out of range 0..={k}")]
    ProjectionIndex { index: usize, k: usize },
    #[error("projection argument has {actual} coordinates, expected {expected}")]
    ProjectionArity { expected: usize, actual: usize },
    #[error("projection coordinate {coordinate} holds {value}, outside 1..={q}")]
    ProjectionSymbol { coordinate: usize, value: u32, q: u32 },
}

/// Parse errors for the matrix and edge-list text formats, with line/column positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line 1: expected header {expected:?}, found {found:?}")]
    Header {
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: expected {expected}, found {found:?}")]
    BadDimensions {
        line: usize,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}, column {column}: {token:?} is not a positive integer")]
    BadToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: symbol {value} is outside 1..={max}")]
    SymbolRange {
        line: usize,
        column: usize,
        value: u64,
        max: u64,
    },
    #[error("line {line}: {actual} entries, expected {expected}")]
    WidthMismatch {
        line: usize,
        expected: usize,
        actual: usize,
    },
    #[error("line {line}: file declares {expected} data rows but ends after {actual}")]
    MissingRows {
        line: usize,
        expected: usize,
        actual: usize,
    },
    #[error("line {line}: unexpected content after the declared data rows")]
    TrailingContent { line: usize },
    #[error("line {line}: {message}")]
    Invalid { line: usize, message: String },
}
