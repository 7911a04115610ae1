//! Nelder-Mead downhill simplex with the standard coefficients
//! (reflection 1, expansion 2, contraction ½, shrink ½).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Initial edge length along each coordinate.
    pub step: f64,
    pub max_evals: usize,
    /// Converged once every vertex lies within `tol` (max-norm) of the best.
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult<const N: usize> {
    pub x: [f64; N],
    pub fx: f64,
    pub evals: usize,
    pub converged: bool,
}

fn diameter<const N: usize>(pts: &[[f64; N]]) -> f64 {
    let best = &pts[0];
    pts[1..].iter().flat_map(|p| p.iter().zip(best.iter()).map(|(a, b)| (a - b).abs())).fold(0.0, f64::max)
}

fn affine<const N: usize>(c: &[f64; N], w: &[f64; N], t: f64) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = c[i] + t * (w[i] - c[i]);
    }
    out
}

/// Minimizes `f` from `x0`. Non-finite values count as +∞, so `f` may
/// reject points outside its domain that way.
pub fn minimize<const N: usize, F: Fn(&[f64; N]) -> f64>(f: F, x0: [f64; N], opts: SimplexOptions) -> SimplexResult<N> {
    let eval = |x: &[f64; N]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<[f64; N]> = Vec::with_capacity(N + 1);
    pts.push(x0);
    for i in 0..N {
        let mut p = x0;
        p[i] += opts.step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(eval).collect();
    let mut evals = N + 1;

    loop {
        // stable sort keeps tie order reproducible
        let mut idx: Vec<usize> = (0..=N).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = idx.iter().map(|&i| pts[i]).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();

        if diameter(&pts) < opts.tol {
            return SimplexResult { x: pts[0], fx: vals[0], evals, converged: true };
        }
        if evals >= opts.max_evals {
            return SimplexResult { x: pts[0], fx: vals[0], evals, converged: false };
        }

        let mut centroid = [0.0; N];
        for p in &pts[..N] {
            for (c, v) in centroid.iter_mut().zip(p.iter()) {
                *c += v / N as f64;
            }
        }
        let worst = pts[N];
        let fw = vals[N];

        let xr = affine(&centroid, &worst, -1.0);
        let fr = eval(&xr);
        evals += 1;
        if fr < vals[0] {
            let xe = affine(&centroid, &worst, -2.0);
            let fe = eval(&xe);
            evals += 1;
            if fe < fr {
                pts[N] = xe;
                vals[N] = fe;
            } else {
                pts[N] = xr;
                vals[N] = fr;
            }
            continue;
        }
        if fr < vals[N - 1] {
            pts[N] = xr;
            vals[N] = fr;
            continue;
        }
        let (xc, fc) = if fr < fw {
            let xc = affine(&centroid, &xr, 0.5);
            (xc, eval(&xc))
        } else {
            let xc = affine(&centroid, &worst, 0.5);
            (xc, eval(&xc))
        };
        evals += 1;
        if fc < fr.min(fw) {
            pts[N] = xc;
            vals[N] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..=N {
            pts[i] = affine(&best, &pts[i], 0.5);
            vals[i] = eval(&pts[i]);
        }
        evals += N;
    }
}
