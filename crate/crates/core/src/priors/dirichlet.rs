use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};

/// Draws from `Dir(alpha)` by normalising independent `Gamma(alpha_i, 1)` draws.
pub fn sample_dirichlet<G: Rng + ?Sized, const K: usize>(alpha: [f64; K], rng: &mut G) -> Result<[f64; K]> {
    let mut draws = [0.0; K];
    for (x, &a) in draws.iter_mut().zip(&alpha) {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Parameter(format!("Dirichlet concentration {a} must be positive")));
        }
        let g = Gamma::new(a, 1.0).map_err(|e| Error::Parameter(e.to_string()))?;
        *x = g.sample(rng);
    }
    let sum: f64 = draws.iter().sum();
    if sum > 0.0 {
        draws.iter_mut().for_each(|x| *x /= sum);
    } else {
        // every gamma draw underflowed; only possible for tiny concentrations
        let largest = alpha
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        draws = [0.0; K];
        draws[largest] = 1.0;
    }
    Ok(draws)
}
