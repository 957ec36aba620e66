//! Code matrices over {1..q}, separation types, and row-level separation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};

/// An N x n matrix over the alphabet {1..q}; columns are the words of the code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMatrix {
    rows: usize,
    cols: usize,
    alphabet: u32,
    entries: Vec<u32>, // column-major: entries[col * rows + row]
}

impl CodeMatrix {
    /// Builds a matrix from row slices; every entry must lie in 1..=alphabet.
    pub fn from_rows(alphabet: u32, rows: &[Vec<u32>]) -> Result<Self, Error> {
        if rows.is_empty() {
            return Err(Error::NoRows);
        }
        if alphabet == 0 {
            return Err(Error::ZeroAlphabet);
        }
        let cols = rows[0].len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRow {
                    row: r,
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if value == 0 || value > alphabet {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value,
                        alphabet,
                    });
                }
            }
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for c in 0..cols {
            for row in rows {
                entries.push(row[c]);
            }
        }
        Ok(CodeMatrix {
            rows: rows.len(),
            cols,
            alphabet,
            entries,
        })
    }

    /// Builds a matrix from column slices; `rows` fixes the height even when there are no columns.
    pub fn from_columns(alphabet: u32, rows: usize, columns: &[Vec<u32>]) -> Result<Self, Error> {
        if rows == 0 {
            return Err(Error::NoRows);
        }
        if alphabet == 0 {
            return Err(Error::ZeroAlphabet);
        }
        let mut entries = Vec::with_capacity(rows * columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::RaggedRow {
                    row: c,
                    expected: rows,
                    actual: col.len(),
                });
            }
            for (r, &value) in col.iter().enumerate() {
                if value == 0 || value > alphabet {
                    return Err(Error::EntryOutOfRange {
                        row: r,
                        col: c,
                        value,
                        alphabet,
                    });
                }
            }
            entries.extend_from_slice(col);
        }
        Ok(CodeMatrix {
            rows,
            cols: columns.len(),
            alphabet,
            entries,
        })
    }

    /// Number of rows N.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns n.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Alphabet size q; symbols are 1..=q.
    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    /// Entry at the given row and column.
    pub fn symbol(&self, row: usize, col: usize) -> u32 {
        self.entries[col * self.rows + row]
    }

    /// The column as a contiguous slice of its N symbols.
    pub fn column(&self, col: usize) -> &[u32] {
        &self.entries[col * self.rows..(col + 1) * self.rows]
    }

    /// Iterator over all columns in index order.
    pub fn columns(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.cols).map(move |c| self.column(c))
    }

    /// New matrix keeping the listed rows and columns, in the given order.
    pub(crate) fn select(&self, keep_rows: &[usize], keep_cols: &[usize]) -> CodeMatrix {
        let mut entries = Vec::with_capacity(keep_rows.len() * keep_cols.len());
        for &c in keep_cols {
            for &r in keep_rows {
                entries.push(self.symbol(r, c));
            }
        }
        CodeMatrix {
            rows: keep_rows.len(),
            cols: keep_cols.len(),
            alphabet: self.alphabet,
            entries,
        }
    }

    /// Parses the `SHF 1` text format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::Header {
            expected: "SHF 1",
            found: String::new(),
        })?;
        if header.trim_end() != "SHF 1" {
            return Err(ParseError::Header {
                expected: "SHF 1",
                found: header.trim_end().to_string(),
            });
        }
        let (_, dims) = lines.next().ok_or(ParseError::BadDimensions {
            line: 2,
            expected: "three integers N n q",
            found: String::new(),
        })?;
        let fields: Vec<&str> = dims.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(ParseError::BadDimensions {
                line: 2,
                expected: "three integers N n q",
                found: dims.trim_end().to_string(),
            });
        }
        let parse_dim = |text: &str, column: usize| -> Result<u64, ParseError> {
            text.parse::<u64>().map_err(|_| ParseError::BadToken {
                line: 2,
                column,
                token: text.to_string(),
            })
        };
        let n_rows = parse_dim(fields[0], 1)? as usize;
        let n_cols = parse_dim(fields[1], 2)? as usize;
        let q = parse_dim(fields[2], 3)?;
        if n_rows == 0 {
            return Err(ParseError::Invalid {
                line: 2,
                message: "N must be at least 1".to_string(),
            });
        }
        if q == 0 || q > u64::from(u32::MAX) {
            return Err(ParseError::Invalid {
                line: 2,
                message: format!("q = {q} is outside 1..={}", u32::MAX),
            });
        }
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n_rows);
        for (idx, line) in lines {
            let line_no = idx + 1;
            if rows.len() == n_rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(ParseError::TrailingContent { line: line_no });
            }
            let mut row = Vec::with_capacity(n_cols);
            for (col, token) in line.split_whitespace().enumerate() {
                let value: u64 = token.parse().map_err(|_| ParseError::BadToken {
                    line: line_no,
                    column: col + 1,
                    token: token.to_string(),
                })?;
                if value == 0 || value > q {
                    return Err(ParseError::SymbolRange {
                        line: line_no,
                        column: col + 1,
                        value,
                        max: q,
                    });
                }
                row.push(value as u32);
            }
            if row.len() != n_cols {
                return Err(ParseError::WidthMismatch {
                    line: line_no,
                    expected: n_cols,
                    actual: row.len(),
                });
            }
            rows.push(row);
        }
        if rows.len() != n_rows {
            return Err(ParseError::MissingRows {
                line: rows.len() + 3,
                expected: n_rows,
                actual: rows.len(),
            });
        }
        CodeMatrix::from_rows(q as u32, &rows).map_err(|e| ParseError::Invalid {
            line: 2,
            message: e.to_string(),
        })
    }
}

impl FromStr for CodeMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CodeMatrix::parse(s)
    }
}

impl fmt::Display for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SHF 1")?;
        writeln!(f, "{} {} {}", self.rows, self.cols, self.alphabet)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.symbol(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A multiset of part sizes {w1..wt}, kept sorted in non-decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SepType {
    weights: Vec<u32>,
}

impl SepType {
    /// Builds a type from part sizes; at least one weight, all weights at least 1.
    pub fn new(weights: &[u32]) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::EmptyType);
        }
        if weights.contains(&0) {
            return Err(Error::ZeroWeight);
        }
        let mut weights = weights.to_vec();
        weights.sort_unstable();
        Ok(SepType { weights })
    }

    /// The type {1,...,1} with t parts.
    pub fn perfect(t: usize) -> Result<Self, Error> {
        SepType::new(&vec![1u32; t])
    }

    /// Part sizes in non-decreasing order.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Number of parts t.
    pub fn t(&self) -> usize {
        self.weights.len()
    }

    /// Total weight u, the sum of the part sizes.
    pub fn u(&self) -> u64 {
        self.weights.iter().map(|&w| u64::from(w)).sum()
    }
}

impl fmt::Display for SepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for SepType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut weights = Vec::new();
        for token in trimmed.split(',') {
            let w: u32 = token.trim().parse().map_err(|_| Error::ZeroWeight)?;
            weights.push(w);
        }
        SepType::new(&weights)
    }
}

/// Whether one row separates the given pairwise disjoint column sets.
///
/// A single set is separated when the row is injective on it; two or more sets
/// are separated when their symbol images are pairwise disjoint.
pub fn separates(m: &CodeMatrix, row: usize, parts: &[Vec<usize>]) -> Result<bool, Error> {
    if row >= m.rows() {
        return Err(Error::RowOutOfRange {
            index: row,
            rows: m.rows(),
        });
    }
    let mut seen_cols = vec![false; m.cols()];
    for part in parts {
        for &col in part {
            if col >= m.cols() {
                return Err(Error::ColumnOutOfRange {
                    index: col,
                    cols: m.cols(),
                });
            }
            if seen_cols[col] {
                return Err(Error::OverlappingParts { column: col });
            }
            seen_cols[col] = true;
        }
    }
    // owner[s] = 1 + index of the part that claimed symbol s in this row
    let mut owner = vec![0u32; m.alphabet() as usize + 1];
    let single = parts.len() == 1;
    for (p, part) in parts.iter().enumerate() {
        for &col in part {
            let s = m.symbol(row, col) as usize;
            if owner[s] == 0 {
                owner[s] = p as u32 + 1;
            } else if single || owner[s] != p as u32 + 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_matrix() -> CodeMatrix {
        CodeMatrix::from_rows(
            6,
            &[vec![1, 2, 1], vec![3, 3, 4], vec![5, 6, 6]],
        )
        .unwrap()
    }

    #[test]
    fn separates_single_set_needs_injectivity() {
        let m = CodeMatrix::from_rows(3, &[vec![1, 2, 3], vec![1, 1, 2]]).unwrap();
        assert!(separates(&m, 0, &[vec![0, 1, 2]]).unwrap());
        assert!(!separates(&m, 1, &[vec![0, 1, 2]]).unwrap());
        // {1,3} is injective in both rows
        assert!(separates(&m, 1, &[vec![0, 2]]).unwrap());
    }

    #[test]
    fn separates_two_sets_allows_repeats_within_a_part() {
        // row 0 maps {1,2} to {1} and {3} to {2}: disjoint images
        let m = CodeMatrix::from_rows(2, &[vec![1, 1, 2], vec![1, 2, 1]]).unwrap();
        assert!(separates(&m, 0, &[vec![0, 1], vec![2]]).unwrap());
        assert!(!separates(&m, 1, &[vec![0, 1], vec![2]]).unwrap());
        assert!(!separates(&m, 0, &[vec![0], vec![1, 2]]).unwrap());
        assert!(!separates(&m, 1, &[vec![0], vec![1, 2]]).unwrap());
    }

    #[test]
    fn separates_triangle_matrix_rows() {
        let m = triangle_matrix();
        // each row fails to separate exactly one pair of columns
        assert!(!separates(&m, 0, &[vec![0], vec![2]]).unwrap());
        assert!(separates(&m, 0, &[vec![0], vec![1]]).unwrap());
        assert!(!separates(&m, 1, &[vec![0], vec![1]]).unwrap());
        assert!(!separates(&m, 2, &[vec![1], vec![2]]).unwrap());
        assert!(separates(&m, 2, &[vec![0], vec![1]]).unwrap());
    }

    #[test]
    fn separates_rejects_bad_arguments() {
        let m = triangle_matrix();
        assert_eq!(
            separates(&m, 3, &[vec![0]]),
            Err(Error::RowOutOfRange { index: 3, rows: 3 })
        );
        assert_eq!(
            separates(&m, 0, &[vec![0], vec![5]]),
            Err(Error::ColumnOutOfRange { index: 5, cols: 3 })
        );
        assert_eq!(
            separates(&m, 0, &[vec![0, 1], vec![1]]),
            Err(Error::OverlappingParts { column: 1 })
        );
        assert_eq!(
            separates(&m, 0, &[vec![0, 0]]),
            Err(Error::OverlappingParts { column: 0 })
        );
    }

    #[test]
    fn from_rows_validates() {
        assert_eq!(CodeMatrix::from_rows(3, &[]), Err(Error::NoRows));
        assert_eq!(
            CodeMatrix::from_rows(0, &[vec![1]]),
            Err(Error::ZeroAlphabet)
        );
        assert_eq!(
            CodeMatrix::from_rows(3, &[vec![1, 2], vec![1]]),
            Err(Error::RaggedRow {
                row: 1,
                expected: 2,
                actual: 1
            })
        );
        assert_eq!(
            CodeMatrix::from_rows(3, &[vec![1, 4]]),
            Err(Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 4,
                alphabet: 3
            })
        );
    }

    #[test]
    fn empty_code_is_representable() {
        let m = CodeMatrix::from_columns(4, 2, &[]).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 0);
        assert_eq!(m.to_string(), "SHF 1\n2 0 4\n\n\n");
    }

    #[test]
    fn parse_round_trip() {
        let text = "SHF 1\n2 3 4\n1 2 3\n4 4 1\n";
        let m = CodeMatrix::parse(text).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.alphabet(), 4);
        assert_eq!(m.symbol(1, 0), 4);
        assert_eq!(m.to_string(), text);
    }

    #[test]
    fn parse_rejects_bad_header() {
        let err = CodeMatrix::parse("SHF 2\n1 1 1\n1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Header {
                expected: "SHF 1",
                found: "SHF 2".to_string()
            }
        );
    }

    #[test]
    fn parse_reports_symbol_position() {
        let err = CodeMatrix::parse("SHF 1\n2 3 4\n1 2 3\n4 5 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::SymbolRange {
                line: 4,
                column: 2,
                value: 5,
                max: 4
            }
        );
    }

    #[test]
    fn parse_reports_width_mismatch() {
        let err = CodeMatrix::parse("SHF 1\n2 3 4\n1 2\n4 4 1\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::WidthMismatch {
                line: 3,
                expected: 3,
                actual: 2
            }
        );
    }

    #[test]
    fn parse_rejects_trailing_and_missing_rows() {
        assert_eq!(
            CodeMatrix::parse("SHF 1\n1 2 4\n1 2\n3 4\n"),
            Err(ParseError::TrailingContent { line: 4 })
        );
        assert_eq!(
            CodeMatrix::parse("SHF 1\n3 2 4\n1 2\n3 4\n"),
            Err(ParseError::MissingRows {
                line: 5,
                expected: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let err = CodeMatrix::parse("SHF 1\n1 2 4\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::BadToken {
                line: 3,
                column: 2,
                token: "x".to_string()
            }
        );
    }

    #[test]
    fn sep_type_sorts_and_validates() {
        let ty = SepType::new(&[2, 1, 1]).unwrap();
        assert_eq!(ty.weights(), &[1, 1, 2]);
        assert_eq!(ty.t(), 3);
        assert_eq!(ty.u(), 4);
        assert_eq!(ty.to_string(), "{1,1,2}");
        assert_eq!(SepType::new(&[]), Err(Error::EmptyType));
        assert_eq!(SepType::new(&[1, 0]), Err(Error::ZeroWeight));
    }

    #[test]
    fn sep_type_from_str() {
        assert_eq!("1,2,2".parse::<SepType>().unwrap().weights(), &[1, 2, 2]);
        assert_eq!("{2,1}".parse::<SepType>().unwrap().weights(), &[1, 2]);
        assert!("".parse::<SepType>().is_err());
        assert!("1,x".parse::<SepType>().is_err());
    }
}
