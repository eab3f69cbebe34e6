use crate::error::{GasketError, Result};

/// `N(T) = #{eigenvalues of |D| ≤ T}`; level `k` contributes `6 · 3^k`
/// copies of `2^k`.
pub fn eigenvalue_counting(t: f64) -> Result<u64> {
    if t.is_nan() || t < 1.0 || !t.is_finite() {
        return Err(GasketError::ParameterOutOfRange {
            name: "T",
            value: t,
        });
    }
    let mut total: u64 = 0;
    let mut k = 0;
    while 2f64.powi(k) <= t {
        let term = 3u64
            .checked_pow(k as u32)
            .and_then(|p| p.checked_mul(6))
            .and_then(|p| total.checked_add(p))
            .ok_or(GasketError::ParameterOutOfRange {
                name: "T",
                value: t,
            })?;
        total = term;
        k += 1;
    }
    Ok(total)
}

/// Least-squares slope of `log N(2^m)` against `m log 2`, `m = 0..=log2(t_max)`.
pub fn dimension_fit(t_max: f64) -> Result<f64> {
    if t_max.is_nan() || t_max < 2.0 || !t_max.is_finite() {
        return Err(GasketError::ParameterOutOfRange {
            name: "T_max",
            value: t_max,
        });
    }
    let m_max = t_max.log2().floor() as i32;
    let mut points = Vec::with_capacity(m_max as usize + 1);
    for m in 0..=m_max {
        let x = m as f64 * std::f64::consts::LN_2;
        let y = (eigenvalue_counting(2f64.powi(m))? as f64).ln();
        points.push((x, y));
    }
    let len = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / len;
    let my = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(eigenvalue_counting(1.0).unwrap(), 6);
        assert_eq!(eigenvalue_counting(1.9).unwrap(), 6);
        assert_eq!(eigenvalue_counting(2.0).unwrap(), 24);
        assert_eq!(eigenvalue_counting(4.0).unwrap(), 78);
        assert!(eigenvalue_counting(0.5).is_err());
        assert!(eigenvalue_counting(f64::NAN).is_err());
        assert!(eigenvalue_counting(2f64.powi(60)).is_err());
    }

    #[test]
    fn closed_form() {
        // N(2^m) = 3 (3^{m+1} − 1)
        for m in 0..30 {
            let want = 3 * (3u64.pow(m + 1) - 1);
            assert_eq!(eigenvalue_counting(2f64.powi(m as i32)).unwrap(), want);
        }
    }

    #[test]
    fn fitted_slope() {
        // reference value from an independent float64 least-squares fit
        let s = dimension_fit(2f64.powi(20)).unwrap();
        assert!((s - 1.5953378864161247).abs() < 1e-12);
        let far = dimension_fit(2f64.powi(38)).unwrap();
        assert!((far - 3f64.ln() / 2f64.ln()).abs() < (s - 3f64.ln() / 2f64.ln()).abs());
        assert!(dimension_fit(1.0).is_err());
    }
}
