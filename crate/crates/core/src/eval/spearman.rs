use crate::error::{Error, Result};

/// 1-based ranks where tied values share the mean of the positions they
/// occupy.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|a, b| xs[*a].total_cmp(&xs[*b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && xs[order[end]] == xs[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share their mean.
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn check_inputs(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::data(format!(
            "correlation inputs differ in length: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::data("correlation needs at least two observations"));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::data("correlation inputs must be finite"));
    }
    Ok(())
}

/// Pearson correlation. If exactly one side is constant the result is 0;
/// if both are, the correlation is undefined.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_inputs(xs, ys)?;
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    match (sxx > 0.0, syy > 0.0) {
        (false, false) => Err(Error::UndefinedCorrelation(
            "both inputs are constant".to_string(),
        )),
        (true, true) => Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)),
        _ => Ok(0.0),
    }
}

/// Spearman rank correlation: Pearson correlation of average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_inputs(xs, ys)?;
    pearson(&average_ranks(xs), &average_ranks(ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn ranks_with_ties() {
        assert_eq!(average_ranks(&[10.0, 20.0, 10.0, 30.0]), vec![1.5, 3.0, 1.5, 4.0]);
        assert_eq!(average_ranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn reversal_and_identity() {
        assert_abs_diff_eq!(spearman(&[1., 2., 3., 4.], &[4., 3., 2., 1.]).unwrap(), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(spearman(&[0.3, 9., -2.], &[0.3, 9., -2.]).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn constant_inputs() {
        assert!(matches!(
            spearman(&[1., 1., 1.], &[2., 2., 2.]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert_eq!(spearman(&[1., 1., 1.], &[1., 2., 3.]).unwrap(), 0.0);
    }

    #[test]
    fn bad_inputs() {
        assert!(spearman(&[1.], &[1.]).is_err());
        assert!(spearman(&[1., 2.], &[1.]).is_err());
        assert!(spearman(&[1., f64::NAN], &[1., 2.]).is_err());
    }

    fn vec_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..40).prop_flat_map(|n| {
            (
                proptest::collection::vec((0i32..8).prop_map(f64::from), n),
                proptest::collection::vec(-1e3f64..1e3, n),
            )
        })
    }

    proptest! {
        #[test]
        fn symmetric_and_bounded((xs, ys) in vec_pair()) {
            if let (Ok(a), Ok(b)) = (spearman(&xs, &ys), spearman(&ys, &xs)) {
                prop_assert!((a - b).abs() < 1e-12);
                prop_assert!((-1.0..=1.0).contains(&a));
            }
        }

        #[test]
        fn invariant_under_increasing_transform((xs, ys) in vec_pair()) {
            let transformed: Vec<f64> = ys.iter().map(|y| (y / 100.0).exp() * 3.0 + 1.0).collect();
            if let Ok(a) = spearman(&xs, &ys) {
                let b = spearman(&xs, &transformed).unwrap();
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn self_correlation_is_one((_, ys) in vec_pair()) {
            if ys.iter().any(|y| *y != ys[0]) {
                prop_assert!((spearman(&ys, &ys).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }
}
