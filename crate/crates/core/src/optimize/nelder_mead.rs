//! Maximizing simplex pattern search (Nelder–Mead with standard
//! reflection/expansion/contraction coefficients and shrink factor 0.5).

pub(crate) struct SimplexRun {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Stops when the evaluation budget is exhausted or the simplex diameter
/// drops below `diam_tol`.
pub(crate) fn maximize_simplex<F>(
    f: &mut F,
    x0: &[f64],
    edges: &[f64],
    budget: u64,
    diam_tol: f64,
) -> SimplexRun
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    debug_assert_eq!(edges.len(), n);
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += edges[i];
        simplex.push(v);
    }
    let mut evals: u64 = 0;
    let mut fv: Vec<f64> = simplex
        .iter()
        .map(|v| {
            evals += 1;
            f(v)
        })
        .collect();
    let mut converged = false;

    while evals < budget {
        // Best first. NaN never appears: infeasible points map to a finite ramp.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| fv[b].partial_cmp(&fv[a]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        fv = order.iter().map(|&i| fv[i]).collect();
        simplex = reordered;

        let diam = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&simplex[0])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0f64, f64::max);
        if diam < diam_tol {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|v| v[d]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflect: Vec<f64> = (0..n).map(|d| 2.0 * centroid[d] - worst[d]).collect();
        let fr = f(&reflect);
        evals += 1;

        if fr > fv[0] {
            let expand: Vec<f64> = (0..n).map(|d| 3.0 * centroid[d] - 2.0 * worst[d]).collect();
            let fe = f(&expand);
            evals += 1;
            if fe > fr {
                simplex[n] = expand;
                fv[n] = fe;
            } else {
                simplex[n] = reflect;
                fv[n] = fr;
            }
        } else if fr > fv[n - 1] {
            simplex[n] = reflect;
            fv[n] = fr;
        } else {
            let contract: Vec<f64> = (0..n)
                .map(|d| centroid[d] + 0.5 * (worst[d] - centroid[d]))
                .collect();
            let fc = f(&contract);
            evals += 1;
            if fc > fv[n] {
                simplex[n] = contract;
                fv[n] = fc;
            } else {
                for j in 1..=n {
                    for d in 0..n {
                        simplex[j][d] = simplex[0][d] + 0.5 * (simplex[j][d] - simplex[0][d]);
                    }
                    fv[j] = f(&simplex[j]);
                    evals += 1;
                }
            }
        }
    }

    let best = (0..=n)
        .max_by(|&a, &b| fv[a].partial_cmp(&fv[b]).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap();
    SimplexRun {
        x: simplex[best].clone(),
        value: fv[best],
        evaluations: evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_the_peak_of_a_concave_bowl() {
        let target = [1.5, -2.0, 0.25];
        let mut f = |x: &[f64]| {
            -x.iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        };
        let run = maximize_simplex(&mut f, &[0.0, 0.0, 0.0], &[0.5, 0.5, 0.5], 5000, 1e-12);
        assert!(run.converged);
        for (a, b) in run.x.iter().zip(&target) {
            assert!((a - b).abs() < 1e-6, "got {:?}", run.x);
        }
    }

    #[test]
    fn respects_the_budget() {
        let mut f = |x: &[f64]| -x[0] * x[0];
        let run = maximize_simplex(&mut f, &[10.0], &[1.0], 40, 1e-30);
        assert!(run.evaluations <= 40 + 2);
    }
}
