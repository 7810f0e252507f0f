//! Spectrum of a diagonal matrix after a rank-one update, `D + c z z†`.
//!
//! Inputs and outputs are spectral measures: pairs `(eigenvalue, |<q|z>|^2)`
//! over the eigenvectors `q` that `z` sees. Poles with negligible weight and
//! coincident poles are deflated first; deflated eigenvalues are unchanged by
//! the update and returned separately.

/// Poles closer than this (relative) are merged.
pub const MERGE_RTOL: f64 = 1e-13;

const MAX_ITERATIONS: usize = 300;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RankOneOutcome {
    /// Eigenvalues seen by `z` with their weights, ascending.
    pub visible: Vec<(f64, f64)>,
    /// Eigenvalues orthogonal to `z`, one entry per eigenvalue.
    pub deflated: Vec<f64>,
}

/// Sorts poles and merges near-coincident ones; the duplicates become invisible.
fn deflate(mut poles: Vec<(f64, f64)>, c: f64, deflated: &mut Vec<f64>) -> Vec<(f64, f64)> {
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = poles.iter().fold(c.abs(), |m, p| m.max(p.0.abs())).max(f64::MIN_POSITIVE);
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(poles.len());
    for (d, w) in poles {
        // Dropping a component z_i moves eigenvalues by at most c |z| |z_i|.
        if w <= 0.0 || (c > 0.0 && c * w.sqrt() <= 1e-16 * scale) {
            deflated.push(d);
            continue;
        }
        match kept.last_mut() {
            Some(last) if (d - last.0).abs() <= MERGE_RTOL * d.abs().max(last.0.abs()) => {
                // Keep the heavier representative so the merge error stays weight-proportional.
                if w > last.1 {
                    deflated.push(last.0);
                    last.0 = d;
                } else {
                    deflated.push(d);
                }
                last.1 += w;
            }
            _ => kept.push((d, w)),
        }
    }
    kept
}

/// Spectral measure of `D + c z z†` for `c >= 0`.
pub fn rank_one_update(poles: Vec<(f64, f64)>, c: f64) -> RankOneOutcome {
    assert!(c >= 0.0, "only non-negative updates are supported");
    let mut deflated = Vec::new();
    let poles = deflate(poles, c, &mut deflated);
    if c == 0.0 || poles.is_empty() {
        return RankOneOutcome { visible: poles, deflated };
    }
    let total: f64 = poles.iter().map(|p| p.1).sum();
    let n = poles.len();
    let mut visible = Vec::with_capacity(n);
    for i in 0..n {
        visible.push(secular_root(&poles, i, c, total));
    }
    RankOneOutcome { visible, deflated }
}

/// Root of `1 + c sum w_l / (d_l - x) = 0` above pole `i`, with its weight.
fn secular_root(poles: &[(f64, f64)], i: usize, c: f64, total: f64) -> (f64, f64) {
    let n = poles.len();
    let g = |origin: usize, delta: f64| -> (f64, f64) {
        let d0 = poles[origin].0;
        let mut f = 0.0;
        let mut df = 0.0;
        for &(d, w) in poles {
            let gap = (d - d0) - delta;
            let q = w / gap;
            f += q;
            df += q / gap;
        }
        (1.0 + c * f, c * df)
    };

    // Work in offsets from the nearer pole so roots hugging a pole keep full precision.
    let (origin, mut lo, mut hi) = if i + 1 < n {
        let gap = poles[i + 1].0 - poles[i].0;
        let (f_mid, _) = g(i, 0.5 * gap);
        if f_mid >= 0.0 {
            (i, 0.0, 0.5 * gap)
        } else {
            (i + 1, -0.5 * gap, 0.0)
        }
    } else {
        (i, 0.0, c * total)
    };

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        let (f, df) = g(origin, x);
        if f == 0.0 {
            break;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if newton > lo && newton < hi {
            newton
        } else if lo > 0.0 && hi / lo > 16.0 {
            (lo * hi).sqrt()
        } else if hi < 0.0 && lo / hi > 16.0 {
            -(lo * hi).sqrt()
        } else if lo == 0.0 && hi > 0.0 {
            // Open end at the pole: shrink geometrically toward it.
            hi / 16.0
        } else if hi == 0.0 && lo < 0.0 {
            lo / 16.0
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs() || hi - lo <= 2.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
            x = next;
            break;
        }
        x = next;
    }

    let d0 = poles[origin].0;
    let mut s2 = 0.0;
    for &(d, w) in poles {
        let gap = (d - d0) - x;
        s2 += w / (gap * gap);
    }
    (d0 + x, 1.0 / (c * c * s2))
}
