//! Upper bounds on the number of columns a separating hash family can have.

use num_bigint::BigUint;

use crate::error::Error;
use crate::matrix::SepType;

/// A bound value together with the formula that produced it and any caveats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub value: BigUint,
    pub formula: &'static str,
    /// Non-empty when the stated value needs extra hypotheses to be valid.
    pub assumptions: Vec<String>,
}

fn check_params(n_rows: u64, q: u64, sep_type: &SepType) -> Result<u64, Error> {
    if n_rows < 1 {
        return Err(Error::ParameterRange {
            name: "N",
            value: n_rows,
            min: 1,
        });
    }
    if q < 2 {
        return Err(Error::ParameterRange {
            name: "q",
            value: q,
            min: 2,
        });
    }
    let u = sep_type.u();
    if u < 2 {
        return Err(Error::TypeTooSmall { u });
    }
    Ok(u)
}

/// Johnson-type recursive bound on n for an SHF(N; n, q, {w1..wt}).
///
/// With m = u - 1 and r = N reduced mod m into 1..=m, the bound is
/// r * q^ceil(N/m) + (m - r) * q^floor(N/m). The value is unconditional
/// once N >= u - 1 and q >= u; otherwise an assumption is attached.
pub fn johnson_bound(n_rows: u64, q: u64, sep_type: &SepType) -> Result<BoundResult, Error> {
    let u = check_params(n_rows, q, sep_type)?;
    let m = u - 1;
    let mut r = n_rows % m;
    if r == 0 {
        r = m;
    }
    let ceil = u32::try_from(n_rows.div_ceil(m))
        .map_err(|_| Error::ExponentTooLarge {
            exponent: n_rows.div_ceil(m),
        })?;
    let floor = (n_rows / m) as u32;
    let base = BigUint::from(q);
    let value =
        BigUint::from(r) * base.pow(ceil) + BigUint::from(m - r) * base.pow(floor);
    let mut assumptions = Vec::new();
    if !(n_rows >= m && q >= u) {
        assumptions.push(format!(
            "only guaranteed for N >= {m} and q >= {u}; outside that range \
             treat the value as heuristic"
        ));
    }
    Ok(BoundResult {
        value,
        formula: "johnson",
        assumptions,
    })
}

/// Linear bound (u - 1) * q on n, valid for every SHF(N; n, q, {w1..wt}).
pub fn trung_bound(q: u64, sep_type: &SepType) -> Result<BoundResult, Error> {
    let u = check_params(1, q, sep_type)?;
    Ok(BoundResult {
        value: BigUint::from(u - 1) * BigUint::from(q),
        formula: "trung",
        assumptions: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn johnson_value(n_rows: u64, q: u64, weights: &[u32]) -> u64 {
        let ty = SepType::new(weights).unwrap();
        let result = johnson_bound(n_rows, q, &ty).unwrap();
        let digits = result.value.to_u64_digits();
        assert!(digits.len() <= 1);
        digits.first().copied().unwrap_or(0)
    }

    #[test]
    fn johnson_known_values() {
        assert_eq!(johnson_value(3, 5, &[1, 1, 1]), 30); // 1*5^2 + 1*5
        assert_eq!(johnson_value(3, 5, &[1, 1, 1, 1]), 15); // 3*5
        assert_eq!(johnson_value(4, 3, &[1, 3]), 15); // 1*3^2 + 2*3
        assert_eq!(johnson_value(3, 7, &[1, 1, 1]), 56); // q^2 + q
    }

    #[test]
    fn johnson_divisible_case_uses_r_equals_m() {
        // N = 4, u = 3: r = 2, both exponents are 2
        assert_eq!(johnson_value(4, 5, &[1, 1, 1]), 50);
    }

    #[test]
    fn johnson_assumption_flag() {
        let ty = SepType::new(&[1, 1, 1]).unwrap();
        assert!(johnson_bound(3, 5, &ty).unwrap().assumptions.is_empty());
        // q = 2 < u = 3
        assert!(!johnson_bound(3, 2, &ty).unwrap().assumptions.is_empty());
        // N = 1 < u - 1 = 2
        assert!(!johnson_bound(1, 5, &ty).unwrap().assumptions.is_empty());
    }

    #[test]
    fn trung_known_values() {
        let ty = SepType::new(&[1, 1, 1]).unwrap();
        assert_eq!(
            trung_bound(7, &ty).unwrap().value,
            BigUint::from(14u32)
        );
        let ty = SepType::new(&[2, 2]).unwrap();
        assert_eq!(
            trung_bound(10, &ty).unwrap().value,
            BigUint::from(30u32)
        );
    }

    #[test]
    fn trung_matches_johnson_at_minimum_rows() {
        for q in 2..30u64 {
            for weights in [&[1u32, 1][..], &[1, 1, 1], &[1, 2], &[2, 2], &[1, 1, 2]] {
                let ty = SepType::new(weights).unwrap();
                let u = ty.u();
                let johnson = johnson_bound(u - 1, q, &ty).unwrap();
                let trung = trung_bound(q, &ty).unwrap();
                assert_eq!(johnson.value, trung.value, "q={q} type={ty}");
            }
        }
    }

    #[test]
    fn bounds_reject_bad_parameters() {
        let ty = SepType::new(&[1]).unwrap();
        assert_eq!(
            johnson_bound(3, 5, &ty),
            Err(Error::TypeTooSmall { u: 1 })
        );
        let ty = SepType::new(&[1, 1]).unwrap();
        assert_eq!(
            johnson_bound(0, 5, &ty),
            Err(Error::ParameterRange {
                name: "N",
                value: 0,
                min: 1
            })
        );
        assert_eq!(
            johnson_bound(3, 1, &ty),
            Err(Error::ParameterRange {
                name: "q",
                value: 1,
                min: 2
            })
        );
        assert_eq!(
            trung_bound(1, &ty),
            Err(Error::ParameterRange {
                name: "q",
                value: 1,
                min: 2
            })
        );
    }

    #[test]
    fn johnson_big_values_do_not_overflow() {
        let ty = SepType::new(&[1, 1]).unwrap();
        // u = 2: bound is q^N
        let result = johnson_bound(200, 10, &ty).unwrap();
        assert_eq!(result.value, BigUint::from(10u32).pow(200));
    }
}
