use num_rational::BigRational;

use crate::rational::{int, rat};

/// Central charge and lowest-weight table of the unitary minimal model `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModelData {
    pub m: u32,
    pub central_charge: BigRational,
    /// `(r, s, h_{r,s})` for `1 ≤ s ≤ r ≤ m + 1`.
    pub table: Vec<(u32, u32, BigRational)>,
    /// Distinct weights, ascending.
    pub weights: Vec<BigRational>,
}

impl MinimalModelData {
    /// Smallest `(r, s)` with the given weight (ordered by `r * s`).
    pub fn kac_label(&self, h: &BigRational) -> Option<(u32, u32)> {
        self.table
            .iter()
            .filter(|(_, _, w)| w == h)
            .map(|&(r, s, _)| (r, s))
            .min_by_key(|&(r, s)| (r * s, r))
    }
}

pub fn central_charge(m: u32) -> BigRational {
    let (p, q) = (i64::from(m) + 2, i64::from(m) + 3);
    int(1) - rat(6, p * q)
}

pub fn kac_weight(m: u32, r: u32, s: u32) -> BigRational {
    let (p, q) = (i64::from(m) + 2, i64::from(m) + 3);
    let d = q * i64::from(r) - p * i64::from(s);
    rat(d * d - 1, 4 * p * q)
}

pub fn minimal_model(m: u32) -> MinimalModelData {
    let mut table = Vec::new();
    for r in 1..=m + 1 {
        for s in 1..=r {
            table.push((r, s, kac_weight(m, r, s)));
        }
    }
    let mut weights: Vec<BigRational> = table.iter().map(|(_, _, h)| h.clone()).collect();
    weights.sort();
    weights.dedup();
    MinimalModelData {
        m,
        central_charge: central_charge(m),
        table,
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising() {
        let d = minimal_model(1);
        assert_eq!(d.central_charge, rat(1, 2));
        assert_eq!(d.weights, vec![int(0), rat(1, 16), rat(1, 2)]);
    }

    #[test]
    fn tricritical_ising() {
        let d = minimal_model(2);
        assert_eq!(d.central_charge, rat(7, 10));
        let mut expected = vec![int(0), rat(1, 10), rat(3, 5), rat(3, 2), rat(7, 16), rat(3, 80)];
        expected.sort();
        assert_eq!(d.weights, expected);
        assert_eq!(d.kac_label(&rat(1, 10)), Some((3, 3)));
    }

    #[test]
    fn counts() {
        assert_eq!(minimal_model(3).weights.len(), 10);
        assert_eq!(minimal_model(3).central_charge, rat(4, 5));
        assert_eq!(minimal_model(4).central_charge, rat(6, 7));
        assert_eq!(minimal_model(4).weights.len(), 15);
        assert_eq!(minimal_model(0).weights, vec![int(0)]);
    }
}
