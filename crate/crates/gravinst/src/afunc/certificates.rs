//! Cyclic sums over parameter permutations, used to re-verify the hand
//! inequality decompositions of the per-case positivity arguments at sampled
//! points.

use crate::exactmath::MultiPoly;

/// `Σ x_1^{e_1} ... x_k^{e_k}` summed over all permutations of the variable
/// list (so with two variables `Σ a = a + b`, with three `Σ a = 2(a+b+c)`).
pub fn cyclic_sum(vars: &[&str], exponents: &[u32]) -> MultiPoly {
    assert!(exponents.len() <= vars.len());
    let mut exps = exponents.to_vec();
    exps.resize(vars.len(), 0);
    let mut acc = MultiPoly::zero();
    let mut perm: Vec<usize> = (0..vars.len()).collect();
    loop {
        let mut term = MultiPoly::one();
        for (i, &vi) in perm.iter().enumerate() {
            term = term.mul(&MultiPoly::var(vars[vi]).pow(exps[i]));
        }
        acc = acc.add(&term);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    acc
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_poly, rat, ratio};
    use std::collections::BTreeMap;

    #[test]
    fn cyclic_sum_conventions() {
        // Σ a over (a,b,c) = 2(a+b+c)
        assert_eq!(
            cyclic_sum(&["a", "b", "c"], &[1]),
            parse_poly("2*a + 2*b + 2*c").unwrap()
        );
        // Σ a over (a,b) = a + b
        assert_eq!(cyclic_sum(&["a", "b"], &[1]), parse_poly("a + b").unwrap());
        // Σ a^3 b over (a,b) = a^3 b + b^3 a
        assert_eq!(
            cyclic_sum(&["a", "b"], &[3, 1]),
            parse_poly("a^3*b + a*b^3").unwrap()
        );
    }

    #[test]
    fn hand_inequalities_hold_at_sampled_points() {
        // the decompositions used in the two-parameter positivity arguments:
        // 6Σa³b - 6Σa²b² ≥ 0 and Σa + Σa³ ≥ 2Σa² on a,b > 0
        let two = ["a", "b"];
        let ineq1 = cyclic_sum(&two, &[3, 1]).sub(&cyclic_sum(&two, &[2, 2]));
        let ineq2 = cyclic_sum(&two, &[1])
            .add(&cyclic_sum(&two, &[3]))
            .sub(&cyclic_sum(&two, &[2]).scale(&rat(2)));
        // and one three-parameter decomposition: 3Σa³bc - 3Σa²b²c ≥ 0
        let three = ["a", "b", "c"];
        let ineq3 = cyclic_sum(&three, &[3, 1, 1]).sub(&cyclic_sum(&three, &[2, 2, 1]));
        for i in 1..=20i64 {
            for j in 1..=20i64 {
                let mut pt = BTreeMap::new();
                pt.insert("a".to_string(), ratio(i, 7));
                pt.insert("b".to_string(), ratio(j, 5));
                pt.insert("c".to_string(), ratio(i + j, 9));
                assert!(ineq1.eval(&pt).unwrap() >= rat(0));
                assert!(ineq2.eval(&pt).unwrap() >= rat(0));
                assert!(ineq3.eval(&pt).unwrap() >= rat(0));
            }
        }
    }
}
