//! Ordinary least squares for a single regressor.

/// Slope, intercept and coefficient of determination of `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FitError {
    TooFewPoints(usize),
    ZeroVariance,
}

/// Two-pass centered least squares. `r_squared` is `sxy^2 / (sxx * syy)`,
/// clamped into `[0, 1]`; a constant response is fitted exactly, so it gets 1.
pub(crate) fn fit<I>(points: I) -> Result<LineFit, FitError>
where
    I: IntoIterator<Item = (f64, f64)>,
    I::IntoIter: Clone,
{
    let iter = points.into_iter();
    let (n, sum_x, sum_y) = iter
        .clone()
        .fold((0usize, 0.0, 0.0), |(n, sx, sy), (x, y)| {
            (n + 1, sx + x, sy + y)
        });
    if n < 2 {
        return Err(FitError::TooFewPoints(n));
    }
    let mean_x = sum_x / n as f64;
    let mean_y = sum_y / n as f64;
    let (sxx, sxy, syy) = iter.fold((0.0, 0.0, 0.0), |(sxx, sxy, syy), (x, y)| {
        let dx = x - mean_x;
        let dy = y - mean_y;
        (sxx + dx * dx, sxy + dx * dy, syy + dy * dy)
    });
    if sxx <= 0.0 {
        return Err(FitError::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy > 0.0 {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(LineFit {
        slope,
        intercept,
        r_squared,
    })
}
