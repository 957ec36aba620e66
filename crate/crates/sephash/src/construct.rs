//! Generators for the projection family and the modular tangent codes.

use crate::error::Error;
use crate::matrix::CodeMatrix;
use crate::sumfree::{behrend_set, greedy_avoiding_set, phf4_system};

/// Encoding of the composite alphabet used by the projection construction.
///
/// Block 0 holds the identity images of all k-tuples over {1..q}; block i
/// (1 <= i <= k) holds the images with coordinate i deleted. Symbols are
/// numbered 1..=q^k + k*q^(k-1) across the blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionAlphabet {
    k: usize,
    q: u32,
    tail: u64,
    size: u32,
}

fn checked_power(base: u128, exponent: usize) -> Option<u128> {
    if base <= 1 {
        return Some(base.pow(exponent.min(1) as u32));
    }
    let mut acc = 1u128;
    for _ in 0..exponent {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl ProjectionAlphabet {
    pub fn new(k: usize, q: u32) -> Result<Self, Error> {
        if k < 1 {
            return Err(Error::ParameterRange {
                name: "k",
                value: k as u64,
                min: 1,
            });
        }
        if q < 1 {
            return Err(Error::ParameterRange {
                name: "q",
                value: q as u64,
                min: 1,
            });
        }
        let tail = checked_power(q as u128, k - 1);
        let size = tail
            .and_then(|t| t.checked_mul(q as u128 + k as u128))
            .ok_or(Error::AlphabetTooLarge {
                size: u128::MAX,
                max: u32::MAX,
            })?;
        let size = u32::try_from(size).map_err(|_| Error::AlphabetTooLarge {
            size: tail.unwrap() * (q as u128 + k as u128),
            max: u32::MAX,
        })?;
        Ok(Self {
            k,
            q,
            tail: tail.unwrap() as u64,
            size,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Total number of symbols, q^k + k*q^(k-1).
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Applies projection i to a k-tuple: i = 0 keeps it, i >= 1 deletes coordinate i.
    pub fn apply(&self, i: usize, alpha: &[u32]) -> Result<u32, Error> {
        if alpha.len() != self.k {
            return Err(Error::ProjectionArity {
                expected: self.k,
                actual: alpha.len(),
            });
        }
        for (coordinate, &value) in alpha.iter().enumerate() {
            if value < 1 || value > self.q {
                return Err(Error::ProjectionSymbol {
                    coordinate,
                    value,
                    q: self.q,
                });
            }
        }
        if i > self.k {
            return Err(Error::ProjectionIndex {
                index: i,
                k: self.k,
            });
        }
        let mut code = 0u64;
        for (j, &value) in alpha.iter().enumerate() {
            if i > 0 && j == i - 1 {
                continue;
            }
            code = code * self.q as u64 + (value - 1) as u64;
        }
        let base = if i == 0 {
            0
        } else {
            // block 0 is q^k = tail*q wide, blocks 1..=k are tail wide
            self.tail * self.q as u64 + (i as u64 - 1) * self.tail
        };
        Ok((base + code + 1) as u32)
    }
}

/// Builds the N x N*q^(N-1) block-circulant projection matrix; block column j
/// applies projection (i - j) mod N in row i to every (N-1)-tuple over {1..q}.
pub fn hamming_projection_phf(n_rows: usize, q: u32) -> Result<CodeMatrix, Error> {
    if n_rows < 2 || q < 2 {
        return Err(Error::ProjectionParams { rows: n_rows, q });
    }
    let k = n_rows - 1;
    let alphabet = ProjectionAlphabet::new(k, q)?;
    let words = (alphabet.tail * q as u64) as usize;
    let mut columns = Vec::with_capacity(n_rows * words);
    for j in 0..n_rows {
        let mut alpha = vec![1u32; k];
        for code in 0..words {
            let column = (0..n_rows)
                .map(|i| alphabet.apply((i + n_rows - j) % n_rows, &alpha))
                .collect::<Result<Vec<u32>, Error>>()?;
            columns.push(column);
            if code + 1 < words {
                increment(&mut alpha, q);
            }
        }
    }
    CodeMatrix::from_columns(alphabet.size(), n_rows, &columns)
}

/// Steps a tuple over {1..q} to its successor in last-coordinate-fastest order.
fn increment(alpha: &mut [u32], q: u32) {
    for digit in alpha.iter_mut().rev() {
        if *digit < q {
            *digit += 1;
            return;
        }
        *digit = 1;
    }
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

fn mod_pow(mut base: u64, mut exponent: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exponent > 0 {
        if exponent % 2 == 1 {
            acc = mod_mul(acc, base, modulus);
        }
        base = mod_mul(base, base, modulus);
        exponent /= 2;
    }
    acc
}

/// Closest prime to n; a tie between n-d and n+d resolves to the smaller one.
pub fn nearest_prime(n: u64) -> u64 {
    for delta in 0.. {
        if n >= delta && is_prime(n - delta) {
            return n - delta;
        }
        if let Some(up) = n.checked_add(delta) {
            if is_prime(up) {
                return up;
            }
        }
    }
    unreachable!("the primes are unbounded");
}

/// Parameters of a modular tangent code over a prime modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMParams {
    pub q: u64,
    pub tangents: Vec<u64>,
    pub multipliers: Vec<u64>,
}

/// Builds the |tangents| x (q*|multipliers|) code with entry (y + b_i*m) mod q
/// in row i of column (y, m); columns are ordered by (m, y) ascending.
pub fn gm_code(params: &GMParams) -> Result<CodeMatrix, Error> {
    let q = params.q;
    if !is_prime(q) {
        return Err(Error::NotPrime {
            q,
            nearest: nearest_prime(q),
        });
    }
    if q > u32::MAX as u64 {
        return Err(Error::AlphabetTooLarge {
            size: q as u128,
            max: u32::MAX,
        });
    }
    if params.tangents.is_empty() {
        return Err(Error::EmptyTangents);
    }
    if params.multipliers.is_empty() {
        return Err(Error::EmptyMultipliers);
    }
    for (index, &b) in params.tangents.iter().enumerate() {
        if b >= q {
            return Err(Error::TangentRange { value: b, q });
        }
        if params.tangents[..index].contains(&b) {
            return Err(Error::DuplicateValue { value: b });
        }
    }
    for (index, &m) in params.multipliers.iter().enumerate() {
        if m >= q {
            return Err(Error::MultiplierRange { value: m, q });
        }
        if params.multipliers[..index].contains(&m) {
            return Err(Error::DuplicateValue { value: m });
        }
    }
    let mut multipliers = params.multipliers.clone();
    multipliers.sort_unstable();
    let mut columns = Vec::with_capacity(multipliers.len() * q as usize);
    for &m in &multipliers {
        for y in 0..q {
            let column = params
                .tangents
                .iter()
                .map(|&b| ((y + (b * m) % q) % q + 1) as u32)
                .collect();
            columns.push(column);
        }
    }
    CodeMatrix::from_columns(q as u32, params.tangents.len(), &columns)
}

/// Tangent code over {0,1,2} with a progression-free multiplier set in 0..=(q-1)/2.
pub fn phf3_construct(q: u64) -> Result<CodeMatrix, Error> {
    if !is_prime(q) {
        return Err(Error::NotPrime {
            q,
            nearest: nearest_prime(q),
        });
    }
    let multipliers = behrend_set((q - 1) / 2);
    gm_code(&GMParams {
        q,
        tangents: vec![0, 1, 2],
        multipliers: multipliers.elements,
    })
}

/// Derived parameters of the four-tangent construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phf4Params {
    pub mu: u32,
    pub tangents: Vec<u64>,
    pub limit: u64,
}

/// Computes mu = ceil(2^sqrt(log2 q)), the tangent set {0,2,5,mu+5}, and the
/// multiplier cap floor((q-1)/(mu+5)).
pub fn phf4_params(q: u64) -> Result<Phf4Params, Error> {
    if !is_prime(q) {
        return Err(Error::NotPrime {
            q,
            nearest: nearest_prime(q),
        });
    }
    let mu = (2f64).powf((q as f64).log2().sqrt()).ceil() as u64;
    let rank = mu + 5;
    if rank > q - 1 {
        return Err(Error::QTooSmall { q, needed: rank + 1 });
    }
    Ok(Phf4Params {
        mu: mu as u32,
        tangents: vec![0, 2, 5, rank],
        limit: (q - 1) / rank,
    })
}

/// Four-tangent code whose multipliers avoid the mu-parameterized system.
pub fn phf4_construct(q: u64) -> Result<CodeMatrix, Error> {
    let params = phf4_params(q)?;
    let multipliers = greedy_avoiding_set(params.limit, &phf4_system(params.mu));
    gm_code(&GMParams {
        q,
        tangents: params.tangents,
        multipliers: multipliers.elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{find_rainbow_cycle, find_triangle, is_linear, matrix_to_hypergraph};
    use crate::verify::{max_pairwise_agreement, verify_phf};
    use itertools::Itertools;

    fn word(mut code: u32, k: usize, q: u32) -> Vec<u32> {
        let mut alpha = vec![1u32; k];
        for j in (0..k).rev() {
            alpha[j] = code % q + 1;
            code /= q;
        }
        alpha
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(ProjectionAlphabet::new(1, 2).unwrap().size(), 3); // 2 + 1*1
        assert_eq!(ProjectionAlphabet::new(2, 2).unwrap().size(), 8); // 4 + 2*2
        assert_eq!(ProjectionAlphabet::new(3, 3).unwrap().size(), 54); // 27 + 3*9
    }

    #[test]
    fn alphabet_rejects_bad_parameters() {
        assert_eq!(
            ProjectionAlphabet::new(0, 2),
            Err(Error::ParameterRange {
                name: "k",
                value: 0,
                min: 1
            })
        );
        assert_eq!(
            ProjectionAlphabet::new(2, 0),
            Err(Error::ParameterRange {
                name: "q",
                value: 0,
                min: 1
            })
        );
        assert!(matches!(
            ProjectionAlphabet::new(40, 10),
            Err(Error::AlphabetTooLarge { .. })
        ));
    }

    #[test]
    fn apply_identity_block() {
        let pa = ProjectionAlphabet::new(2, 2).unwrap();
        assert_eq!(pa.apply(0, &[1, 1]).unwrap(), 1);
        assert_eq!(pa.apply(0, &[1, 2]).unwrap(), 2);
        assert_eq!(pa.apply(0, &[2, 1]).unwrap(), 3);
        assert_eq!(pa.apply(0, &[2, 2]).unwrap(), 4);
    }

    #[test]
    fn apply_collapses_deleted_coordinate() {
        let pa = ProjectionAlphabet::new(2, 2).unwrap();
        assert_eq!(pa.apply(1, &[1, 2]).unwrap(), pa.apply(1, &[2, 2]).unwrap());
        assert_ne!(pa.apply(2, &[1, 2]).unwrap(), pa.apply(2, &[2, 2]).unwrap());
    }

    #[test]
    fn apply_single_coordinate_is_constant() {
        let pa = ProjectionAlphabet::new(1, 2).unwrap();
        assert_eq!(pa.apply(1, &[1]).unwrap(), 3);
        assert_eq!(pa.apply(1, &[2]).unwrap(), 3);
    }

    #[test]
    fn apply_errors() {
        let pa = ProjectionAlphabet::new(2, 2).unwrap();
        assert_eq!(
            pa.apply(0, &[1]),
            Err(Error::ProjectionArity {
                expected: 2,
                actual: 1
            })
        );
        assert_eq!(
            pa.apply(0, &[1, 3]),
            Err(Error::ProjectionSymbol {
                coordinate: 1,
                value: 3,
                q: 2
            })
        );
        assert_eq!(pa.apply(3, &[1, 2]), Err(Error::ProjectionIndex { index: 3, k: 2 }));
    }

    #[test]
    fn image_sizes_per_block() {
        let pa = ProjectionAlphabet::new(3, 2).unwrap();
        for i in 0..=3 {
            let images: std::collections::BTreeSet<u32> = (0..8)
                .map(|code| pa.apply(i, &word(code, 3, 2)).unwrap())
                .collect();
            let expected = if i == 0 { 8 } else { 4 };
            assert_eq!(images.len(), expected);
        }
    }

    #[test]
    fn hamming_2_2_matrix() {
        let m = hamming_projection_phf(2, 2).unwrap();
        assert_eq!(m.alphabet(), 3);
        let rows: Vec<Vec<u32>> = (0..2)
            .map(|i| (0..4).map(|j| m.symbol(i, j)).collect())
            .collect();
        assert_eq!(rows, vec![vec![1, 2, 3, 3], vec![3, 3, 1, 2]]);
        assert!(verify_phf(&m, 3).unwrap().passed);
    }

    #[test]
    fn hamming_3_2_is_block_circulant() {
        let m = hamming_projection_phf(3, 2).unwrap();
        assert_eq!((m.rows(), m.cols(), m.alphabet()), (3, 12, 8));
        let pa = ProjectionAlphabet::new(2, 2).unwrap();
        for j in 0..3 {
            for code in 0..4 {
                for i in 0..3 {
                    let expected = pa.apply((i + 3 - j) % 3, &word(code, 2, 2)).unwrap();
                    assert_eq!(m.symbol(i, j * 4 + code as usize), expected);
                }
            }
        }
        assert!(verify_phf(&m, 4).unwrap().passed);
    }

    #[test]
    fn hamming_4_2_dimensions() {
        let m = hamming_projection_phf(4, 2).unwrap();
        assert_eq!((m.rows(), m.cols(), m.alphabet()), (4, 32, 20)); // 8 + 3*4
    }

    #[test]
    fn hamming_rejects_degenerate_parameters() {
        assert_eq!(
            hamming_projection_phf(1, 5),
            Err(Error::ProjectionParams { rows: 1, q: 5 })
        );
        assert_eq!(
            hamming_projection_phf(3, 1),
            Err(Error::ProjectionParams { rows: 3, q: 1 })
        );
    }

    #[test]
    fn column_count_to_alphabet_ratio() {
        for (n_rows, q) in [(2usize, 2u32), (2, 5), (3, 2), (3, 3), (3, 4), (4, 2)] {
            let m = hamming_projection_phf(n_rows, q).unwrap();
            let lhs = m.cols() as u64 * (q as u64 + n_rows as u64 - 1);
            let rhs = n_rows as u64 * q as u64 * m.alphabet() as u64;
            assert_eq!(lhs, rhs); // n/|Y| = Nq/(q+N-1)
        }
    }

    #[test]
    fn deleting_projections_cover_small_subsets() {
        // at least k-s+1 of the k deleting projections stay injective on any
        // s-subset of tuples, and at most s-1 of all k+1 projections fail
        for k in 1usize..=3 {
            for q in 2u32..=3 {
                let pa = ProjectionAlphabet::new(k, q).unwrap();
                let vertices: Vec<Vec<u32>> =
                    (0..q.pow(k as u32)).map(|code| word(code, k, q)).collect();
                for s in 2..=(k + 1).min(vertices.len()) {
                    for subset in vertices.iter().combinations(s) {
                        let injective = |i: usize| {
                            let images: std::collections::BTreeSet<u32> = subset
                                .iter()
                                .map(|alpha| pa.apply(i, alpha).unwrap())
                                .collect();
                            images.len() == s
                        };
                        let deleting = (1..=k).filter(|&i| injective(i)).count();
                        if s <= k {
                            assert!(deleting >= k - s + 1);
                        }
                        let failing = (0..=k).filter(|&i| !injective(i)).count();
                        assert!(failing <= s - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn primality_oracle() {
        for p in [2u64, 3, 5, 7, 13, 101, 2_147_483_647, 2_305_843_009_213_693_951] {
            assert!(is_prime(p), "{p} is prime");
        }
        for c in [0u64, 1, 4, 9, 91, 561, 2_305_843_009_213_693_953] {
            assert!(!is_prime(c), "{c} is composite");
        }
    }

    #[test]
    fn nearest_prime_resolves_ties_downward() {
        assert_eq!(nearest_prime(0), 2);
        assert_eq!(nearest_prime(1), 2);
        assert_eq!(nearest_prime(4), 3); // 3 and 5 tie
        assert_eq!(nearest_prime(9), 7); // 7 and 11 tie
        assert_eq!(nearest_prime(13), 13);
        assert_eq!(nearest_prime(15), 13); // 13 and 17 tie
        assert_eq!(nearest_prime(100), 101);
    }

    #[test]
    fn gm_7_example() {
        let m = gm_code(&GMParams {
            q: 7,
            tangents: vec![0, 1, 2],
            multipliers: vec![0, 1, 3],
        })
        .unwrap();
        assert_eq!((m.rows(), m.cols(), m.alphabet()), (3, 21, 7));
        assert_eq!(m.column(0), [1, 1, 1]); // m=0, y=0
        assert_eq!(m.column(7), [1, 2, 3]); // m=1, y=0
        assert_eq!(m.column(16), [3, 6, 2]); // m=3, y=2
        assert_eq!(max_pairwise_agreement(&m).unwrap(), 1);
        let g = matrix_to_hypergraph(&m);
        assert_eq!(find_triangle(&g).unwrap(), None);
        assert!(verify_phf(&m, 3).unwrap().passed);
    }

    #[test]
    fn gm_orders_columns_by_multiplier_then_shift() {
        let shuffled = gm_code(&GMParams {
            q: 5,
            tangents: vec![0, 1],
            multipliers: vec![3, 0, 1],
        })
        .unwrap();
        let sorted = gm_code(&GMParams {
            q: 5,
            tangents: vec![0, 1],
            multipliers: vec![0, 1, 3],
        })
        .unwrap();
        assert_eq!(shuffled, sorted);
    }

    #[test]
    fn gm_single_multiplier_is_linear() {
        let m = gm_code(&GMParams {
            q: 5,
            tangents: vec![0, 1, 2],
            multipliers: vec![0],
        })
        .unwrap();
        assert_eq!(m.cols(), 5);
        assert_eq!(max_pairwise_agreement(&m).unwrap(), 0);
    }

    #[test]
    fn gm_errors() {
        let base = GMParams {
            q: 7,
            tangents: vec![0, 1],
            multipliers: vec![0, 1],
        };
        assert_eq!(
            gm_code(&GMParams { q: 6, ..base.clone() }),
            Err(Error::NotPrime { q: 6, nearest: 5 })
        );
        assert_eq!(
            gm_code(&GMParams {
                tangents: vec![],
                ..base.clone()
            }),
            Err(Error::EmptyTangents)
        );
        assert_eq!(
            gm_code(&GMParams {
                multipliers: vec![],
                ..base.clone()
            }),
            Err(Error::EmptyMultipliers)
        );
        assert_eq!(
            gm_code(&GMParams {
                tangents: vec![0, 7],
                ..base.clone()
            }),
            Err(Error::TangentRange { value: 7, q: 7 })
        );
        assert_eq!(
            gm_code(&GMParams {
                multipliers: vec![0, 9],
                ..base.clone()
            }),
            Err(Error::MultiplierRange { value: 9, q: 7 })
        );
        assert_eq!(
            gm_code(&GMParams {
                tangents: vec![1, 1],
                ..base.clone()
            }),
            Err(Error::DuplicateValue { value: 1 })
        );
        assert_eq!(
            gm_code(&GMParams {
                multipliers: vec![2, 2],
                ..base
            }),
            Err(Error::DuplicateValue { value: 2 })
        );
    }

    #[test]
    fn phf3_small_primes() {
        // multiplier caps (q-1)/2 = 2, 3, 5, 6 all keep {0,1} or {0,1,3}
        for (q, cols) in [(5u64, 10usize), (7, 21), (11, 33), (13, 39)] {
            let m = phf3_construct(q).unwrap();
            assert_eq!((m.rows(), m.cols(), m.alphabet()), (3, cols, q as u32));
        }
    }

    #[test]
    fn phf3_matches_manual_gm() {
        let manual = gm_code(&GMParams {
            q: 5,
            tangents: vec![0, 1, 2],
            multipliers: vec![0, 1],
        })
        .unwrap();
        assert_eq!(phf3_construct(5).unwrap(), manual);
        assert!(verify_phf(&manual, 3).unwrap().passed);
    }

    #[test]
    fn phf3_rejects_tiny_and_composite_moduli() {
        assert_eq!(phf3_construct(2), Err(Error::TangentRange { value: 2, q: 2 }));
        assert_eq!(phf3_construct(9), Err(Error::NotPrime { q: 9, nearest: 7 }));
    }

    #[test]
    fn phf4_parameter_table() {
        let p13 = phf4_params(13).unwrap();
        assert_eq!((p13.mu, p13.limit), (4, 1));
        assert_eq!(p13.tangents, vec![0, 2, 5, 9]);
        let p29 = phf4_params(29).unwrap();
        assert_eq!((p29.mu, p29.limit), (5, 2));
        let p53 = phf4_params(53).unwrap();
        assert_eq!((p53.mu, p53.limit), (6, 4));
        let p101 = phf4_params(101).unwrap();
        assert_eq!((p101.mu, p101.limit), (6, 9));
        assert_eq!(p101.tangents, vec![0, 2, 5, 11]);
    }

    #[test]
    fn phf4_rejects_small_moduli() {
        assert_eq!(phf4_params(2), Err(Error::QTooSmall { q: 2, needed: 8 }));
        assert_eq!(phf4_params(7), Err(Error::QTooSmall { q: 7, needed: 10 }));
        assert!(phf4_params(11).is_ok());
    }

    #[test]
    fn phf4_13_matrix() {
        let m = phf4_construct(13).unwrap();
        assert_eq!((m.rows(), m.cols(), m.alphabet()), (4, 26, 13));
        assert_eq!(m.column(0), [1, 1, 1, 1]); // m=0, y=0
        assert_eq!(m.column(13), [1, 3, 6, 10]); // m=1, y=0
        assert_eq!(is_linear(&matrix_to_hypergraph(&m)), None);
    }

    #[test]
    fn phf4_101_multipliers() {
        let multipliers = greedy_avoiding_set(9, &phf4_system(6));
        assert_eq!(multipliers.elements, vec![0, 1, 2, 7]);
        let m = phf4_construct(101).unwrap();
        assert_eq!((m.rows(), m.cols(), m.alphabet()), (4, 404, 101));
        let g = matrix_to_hypergraph(&m);
        assert_eq!(is_linear(&g), None);
        assert_eq!(find_rainbow_cycle(&g).unwrap(), None);
    }
}
