//! Small number-theoretic helpers.

/// Euler's totient for every integer in `0..=limit` (`phi[0] = 0`).
pub fn totients(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for p in 2..=limit {
        if phi[p] == p as u64 {
            let mut k = p;
            while k <= limit {
                phi[k] -= phi[k] / p as u64;
                k += p;
            }
        }
    }
    phi
}

/// Divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sum_{q | m} phi(q)` using a precomputed totient table.
pub fn totient_divisor_sum(m: u64, phi: &[u64]) -> u64 {
    divisors(m).into_iter().map(|q| phi[q as usize]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_totients() {
        assert_eq!(totients(12), vec![0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn divisor_sum_of_twelve() {
        let phi = totients(12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        let parts: Vec<u64> = divisors(12).iter().map(|&q| phi[q as usize]).collect();
        assert_eq!(parts, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(totient_divisor_sum(12, &phi), 12);
    }
}
