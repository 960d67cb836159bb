//! Independent reconstruction of the moment integrals from the reduced-space
//! area profile.
//!
//! The area `A(t)` of the symplectic quotient at level `t` is piecewise
//! linear on `[-t_max, t_max]` with `t_max = ω(F)/4π`: its initial slope is
//! `-2π c_1(Y)[Σ_{-a}]`, it jumps by `2π/(r_j s_j)` at the critical value of
//! each interior fixed point, and the critical values are located by the
//! chain areas, `t_j = -t_max + |s_j| ω(E_j)/2π`. The end value and end
//! slope must reproduce `ω(c_+)` and the attractive Chern number, and the
//! moments `2π∫ t^k A dt` must equal `(T_0, T_1, T_2)` exactly.

use crate::exactmath::{rat, RatFunc};

use super::{AFuncError, MomentData};

fn pi() -> RatFunc {
    RatFunc::var("pi")
}

/// `∫_{t_j}^{tm} t^k (t - t_j) dt` as an exact rational function.
fn ramp_moment(k: u32, tj: &RatFunc, tm: &RatFunc) -> RatFunc {
    let prim = |x: &RatFunc| -> RatFunc {
        // t^{k+2}/(k+2) - t_j t^{k+1}/(k+1) at t = x
        let xk1 = x.pow(k + 1);
        let xk2 = xk1.mul(x);
        let a = xk2.scale(&crate::exactmath::ratio(1, k as i64 + 2));
        let b = tj.mul(&xk1).scale(&crate::exactmath::ratio(1, k as i64 + 1));
        a.sub(&b)
    };
    prim(tm).sub(&prim(tj))
}

/// `∫_{-tm}^{tm} t^k dt`.
fn full_moment(k: u32, tm: &RatFunc) -> RatFunc {
    if k % 2 == 1 {
        return RatFunc::zero();
    }
    tm.pow(k + 1)
        .scale(&crate::exactmath::ratio(2, k as i64 + 1))
}

/// Reconstructs `(T_0, T_1, T_2)` from the piecewise-linear area profile.
/// Fails when the profile is inconsistent with the endpoint data.
pub fn t_oracle(md: &MomentData) -> Result<(RatFunc, RatFunc, RatFunc), AFuncError> {
    let four_pi = pi().scale(&rat(4));
    let two_pi = pi().scale(&rat(2));
    let tm = md.omega_f.div(&four_pi).expect("ω(F) != 0");
    let s_init = RatFunc::from_rat(-&md.chern_minus * rat(2)).mul(&pi());
    // critical values and slope jumps
    let mut jumps: Vec<(RatFunc, RatFunc)> = Vec::new();
    for ip in &md.interior {
        let tj = tm
            .neg()
            .add(&ip.omega_down.scale(&-&ip.s).div(&two_pi).unwrap());
        // cross-check the location against the ascending chain
        let tj_up = tm.sub(&ip.omega_up.scale(&ip.r).div(&two_pi).unwrap());
        if tj != tj_up {
            return Err(AFuncError::Profile(
                "critical value disagrees between the two chains".into(),
            ));
        }
        let jump = two_pi
            .clone()
            .div(&RatFunc::from_rat(&ip.r * &ip.s))
            .expect("rs != 0");
        jumps.push((tj, jump));
    }
    // end value: A(tm) = ω(c_-) + s_init·2tm + Σ jump·(tm - t_j) = ω(c_+)
    let mut end_value = md.omega_c_minus.add(&s_init.mul(&tm.scale(&rat(2))));
    let mut end_slope = s_init.clone();
    for (tj, jump) in &jumps {
        end_value = end_value.add(&jump.mul(&tm.sub(tj)));
        end_slope = end_slope.add(jump);
    }
    if end_value != md.omega_c_plus {
        return Err(AFuncError::Profile(format!(
            "A(t_max) = {end_value} but ω(c_+) = {}",
            md.omega_c_plus
        )));
    }
    let expect_slope = RatFunc::from_rat(-&md.chern_plus * rat(2)).mul(&pi());
    if end_slope != expect_slope {
        return Err(AFuncError::Profile(
            "end slope disagrees with the attractive Chern number".into(),
        ));
    }

    // moments: A(t) = [ω(c_-) + s_init (t + tm)] + Σ jump·max(0, t - t_j)
    let mut t_k = Vec::with_capacity(3);
    for k in 0..3u32 {
        let base = md
            .omega_c_minus
            .add(&s_init.mul(&tm))
            .mul(&full_moment(k, &tm))
            .add(&s_init.mul(&full_moment(k + 1, &tm)));
        let mut acc = base;
        for (tj, jump) in &jumps {
            acc = acc.add(&jump.mul(&ramp_moment(k, tj, &tm)));
        }
        t_k.push(two_pi.mul(&acc));
    }
    let t2 = t_k.pop().unwrap();
    let t1 = t_k.pop().unwrap();
    let t0 = t_k.pop().unwrap();
    Ok((t0, t1, t2))
}

#[cfg(test)]
mod tests {
    use super::super::moment::{
        compute_t, moment_data_from_raw, EndpointDesc, InteriorPoint, RawMomentInput,
    };
    use super::*;
    use crate::exactmath::{parse_ratfunc as rf, ratio};

    #[test]
    fn oracle_matches_brackets_on_the_quotient_plane_example() {
        let md = moment_data_from_raw(RawMomentInput {
            omega_c_plus: rf("2*pi/3").unwrap(),
            omega_c_minus: RatFunc::zero(),
            omega_f: rf("2*pi").unwrap(),
            c_plus: EndpointDesc::Curve {
                cover_self_int: 1,
                order: 3,
            },
            c_minus: EndpointDesc::Point {
                weights: (rat(1), rat(1)),
                order: 3,
            },
            interior: Vec::new(),
            c1_omega: rf("2*pi").unwrap(),
        })
        .unwrap();
        let t = compute_t(&md);
        let (t0, t1, t2) = t_oracle(&md).unwrap();
        assert_eq!(t0, t.t0);
        assert_eq!(t1, t.t1);
        assert_eq!(t2, t.t2);
    }

    #[test]
    fn oracle_with_an_interior_point() {
        // a rank-one style input: ω(F)=6, one interior point [1,-2] with
        // chain areas 4 (up) and 1 (down)
        let md = moment_data_from_raw(RawMomentInput {
            omega_c_plus: RatFunc::zero(),
            omega_c_minus: RatFunc::zero(),
            omega_f: rf("6").unwrap(),
            c_plus: EndpointDesc::Point {
                weights: (rat(-2), rat(-3)),
                order: 1,
            },
            c_minus: EndpointDesc::Point {
                weights: (ratio(1, 2), ratio(1, 2)),
                order: 12,
            },
            interior: vec![InteriorPoint {
                r: rat(1),
                s: rat(-2),
                up_chain: vec!["F1".into()],
                down_chain: vec!["E5".into()],
                omega_up: rf("4").unwrap(),
                omega_down: rf("1").unwrap(),
            }],
            c1_omega: rf("4").unwrap(),
        })
        .unwrap();
        let t = compute_t(&md);
        let (t0, t1, t2) = t_oracle(&md).unwrap();
        assert_eq!(t0, t.t0);
        assert_eq!(t1, t.t1);
        assert_eq!(t2, t.t2);
        // hand values for this input
        assert_eq!(t.t0, rf("2").unwrap());
        assert_eq!(t.t1, rf("-1/(3*pi)").unwrap());
        assert_eq!(t.t2, rf("5/(6*pi^2)").unwrap());
    }

    #[test]
    fn profile_rejects_bad_chain_areas() {
        let md = moment_data_from_raw(RawMomentInput {
            omega_c_plus: RatFunc::zero(),
            omega_c_minus: RatFunc::zero(),
            omega_f: rf("6").unwrap(),
            c_plus: EndpointDesc::Point {
                weights: (rat(-2), rat(-3)),
                order: 1,
            },
            c_minus: EndpointDesc::Point {
                weights: (ratio(1, 2), ratio(1, 2)),
                order: 12,
            },
            interior: vec![InteriorPoint {
                r: rat(1),
                s: rat(-2),
                up_chain: vec![],
                down_chain: vec![],
                omega_up: rf("3").unwrap(), // wrong: 1·3 + 2·1 != 6
                omega_down: rf("1").unwrap(),
            }],
            c1_omega: rf("4").unwrap(),
        })
        .unwrap();
        assert!(t_oracle(&md).is_err());
    }
}
