//! Exact linear assignment by the O(n^3) shortest-augmenting-path method
//! with dual potentials (the Hungarian algorithm in its Jonker-Volgenant
//! formulation). The permutation-invariant error metric reduces to this
//! problem, so an exact solver is required; rows are processed and columns
//! scanned in index order, which makes tie-breaking deterministic with the
//! lowest row index winning.

/// Solves `min_sigma sum_i cost[i][sigma(i)]` for a square cost matrix given
/// in row-major order. Returns `assignment[row] = column`.
///
/// # Panics
/// Panics if `cost.len() != n * n` or any cost is non-finite.
pub fn solve_assignment(n: usize, cost: &[f64]) -> Vec<usize> {
    assert_eq!(cost.len(), n * n, "cost matrix must be n x n");
    assert!(
        cost.iter().all(|c| c.is_finite()),
        "assignment costs must be finite"
    );
    if n == 0 {
        return Vec::new();
    }

    // Potentials and matching use 1-based columns internally; column 0 is
    // the virtual root of each augmenting search.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut matched_row = vec![usize::MAX; n + 1];

    for row in 0..n {
        matched_row[0] = row;
        let mut j0 = 0usize;
        let mut min_to = vec![f64::INFINITY; n + 1];
        let mut prev = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];

        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 * n + (j - 1)] - u[i0 + 1] - v[j];
                if reduced < min_to[j] {
                    min_to[j] = reduced;
                    prev[j] = j0;
                }
                if min_to[j] < delta {
                    delta = min_to[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched_row[j] + 1] += delta;
                    v[j] -= delta;
                } else {
                    min_to[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == usize::MAX {
                break;
            }
        }

        // Augment along the alternating path back to the root.
        while j0 != 0 {
            let j1 = prev[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        }
    }

    let mut assignment = vec![usize::MAX; n];
    for j in 1..=n {
        assignment[matched_row[j]] = j - 1;
    }
    assignment
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn total_cost(n: usize, cost: &[f64], assignment: &[usize]) -> f64 {
        assignment
            .iter()
            .enumerate()
            .map(|(r, &c)| cost[r * n + c])
            .sum()
    }

    fn brute_force_min(n: usize, cost: &[f64]) -> f64 {
        fn recurse(n: usize, cost: &[f64], row: usize, taken: &mut [bool], acc: f64) -> f64 {
            if row == n {
                return acc;
            }
            let mut best = f64::INFINITY;
            for c in 0..n {
                if !taken[c] {
                    taken[c] = true;
                    best = best.min(recurse(n, cost, row + 1, taken, acc + cost[row * n + c]));
                    taken[c] = false;
                }
            }
            best
        }
        recurse(n, cost, 0, &mut vec![false; n], 0.0)
    }

    #[test]
    fn solves_textbook_instance() {
        let cost = vec![
            10.0, 25.0, 15.0, 20.0, //
            15.0, 30.0, 5.0, 15.0, //
            35.0, 20.0, 12.0, 24.0, //
            17.0, 25.0, 24.0, 20.0,
        ];
        let a = solve_assignment(4, &cost);
        assert_eq!(a, vec![0, 2, 1, 3]);
        assert_eq!(total_cost(4, &cost, &a), 10.0 + 5.0 + 20.0 + 20.0);
    }

    #[test]
    fn is_a_permutation_and_optimal_on_random_instances() {
        let mut rng = rng_from_seed(77);
        for n in 1..=6 {
            for _ in 0..50 {
                let cost: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let a = solve_assignment(n, &cost);
                let mut seen = vec![false; n];
                for &c in &a {
                    assert!(!seen[c]);
                    seen[c] = true;
                }
                let got = total_cost(n, &cost, &a);
                let want = brute_force_min(n, &cost);
                assert!((got - want).abs() < 1e-10, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn handles_empty_input() {
        assert!(solve_assignment(0, &[]).is_empty());
    }
}
