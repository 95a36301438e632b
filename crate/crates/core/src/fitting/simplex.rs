//! Nelder-Mead simplex minimisation with restarts.

/// Stopping rules and budget for [`minimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_evaluations: usize,
    /// Stop when the spread of objective values across the simplex is below
    /// this fraction of the best value.
    pub ftol: f64,
    /// Stop when every vertex lies within this distance of the best one.
    pub xtol: f64,
    /// Edge length of the initial (and every restart) simplex.
    pub initial_step: f64,
    /// Fresh simplices built around the incumbent after convergence.
    pub restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_evaluations: 10_000,
            ftol: 1e-8,
            xtol: 1e-6,
            initial_step: 0.5,
            restarts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome<const N: usize> {
    pub best: [f64; N],
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

struct Counted<F> {
    f: F,
    evaluations: usize,
}

impl<F> Counted<F> {
    fn eval<const N: usize>(&mut self, x: &[f64; N]) -> f64
    where
        F: FnMut(&[f64; N]) -> f64,
    {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

fn lerp<const N: usize>(from: &[f64; N], to: &[f64; N], t: f64) -> [f64; N] {
    std::array::from_fn(|i| from[i] + t * (to[i] - from[i]))
}

/// Minimises `f` from `start`.
///
/// `converged` is false only when the evaluation budget ran out before the
/// stopping rule was met.
pub fn minimize<const N: usize, F>(f: F, start: [f64; N], opts: &SimplexOptions) -> SimplexOutcome<N>
where
    F: FnMut(&[f64; N]) -> f64,
{
    let mut counted = Counted { f, evaluations: 0 };
    let mut best = start;
    let mut value = counted.eval(&best);
    let mut converged = false;
    for _ in 0..=opts.restarts {
        let run = descend(&mut counted, best, opts);
        let improved = value - run.1;
        let scale = run.1.abs().max(f64::MIN_POSITIVE);
        if run.1 <= value {
            best = run.0;
            value = run.1;
        }
        converged = run.2;
        if !converged || improved <= opts.ftol * scale {
            break;
        }
    }
    SimplexOutcome {
        best,
        value,
        evaluations: counted.evaluations,
        converged,
    }
}

/// One Nelder-Mead descent. Returns the best vertex, its value and whether
/// the stopping rule fired within budget.
fn descend<const N: usize, F>(
    counted: &mut Counted<F>,
    start: [f64; N],
    opts: &SimplexOptions,
) -> ([f64; N], f64, bool)
where
    F: FnMut(&[f64; N]) -> f64,
{
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    let v0 = counted.eval(&start);
    simplex.push((start, v0));
    for i in 0..N {
        let mut p = start;
        p[i] += opts.initial_step;
        let v = counted.eval(&p);
        simplex.push((p, v));
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, f_best) = simplex[0];
        let f_worst = simplex[N].1;
        let spread = f_worst - f_best;
        let diameter = simplex[1..]
            .iter()
            .map(|(p, _)| {
                p.iter()
                    .zip(best.iter())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if (f_best.is_finite() && spread <= opts.ftol * f_best.abs().max(f64::MIN_POSITIVE))
            || diameter < opts.xtol
        {
            return (best, f_best, true);
        }
        if counted.evaluations >= opts.max_evaluations {
            return (best, f_best, false);
        }

        let centroid: [f64; N] = std::array::from_fn(|i| {
            simplex[..N].iter().map(|(p, _)| p[i]).sum::<f64>() / N as f64
        });
        let worst = simplex[N].0;
        let reflected = lerp(&centroid, &worst, -REFLECT);
        let f_reflected = counted.eval(&reflected);

        if f_reflected < f_best {
            let expanded = lerp(&centroid, &worst, -EXPAND);
            let f_expanded = counted.eval(&expanded);
            simplex[N] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[N - 1].1 {
            simplex[N] = (reflected, f_reflected);
            continue;
        }
        let (contracted, f_contracted) = if f_reflected < f_worst {
            let p = lerp(&centroid, &reflected, CONTRACT);
            let v = counted.eval(&p);
            (p, v)
        } else {
            let p = lerp(&centroid, &worst, CONTRACT);
            let v = counted.eval(&p);
            (p, v)
        };
        if f_contracted < f_worst.min(f_reflected) {
            simplex[N] = (contracted, f_contracted);
            continue;
        }
        for vertex in simplex.iter_mut().skip(1) {
            let p = lerp(&best, &vertex.0, SHRINK);
            *vertex = (p, counted.eval(&p));
        }
    }
}
