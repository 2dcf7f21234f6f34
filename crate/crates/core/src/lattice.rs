//! The value lattice of an L2 form and its parallelogram counts.
//!
//! For an L2 form l(z) = <a, z> + c the value group
//! A_l = { <a, k> : k in Z^n } is a rank-2 lattice in C.  We compute a
//! canonical basis by clearing a common denominator D and running an
//! integer normal-form reduction on the n columns (D Re a_j, D Im a_j):
//! the result is u = (d1, 0) and v = (vx, d2) with d1, d2 > 0 and
//! 0 <= vx < d1, giving w1 = d1/D and w2 = (vx + i d2)/D.  This basis is
//! unique for a given coefficient vector and already oriented, since
//! Im(w2/w1) = d2/d1 > 0.
//!
//! nu(l, p, q) counts value-lattice points in the half-open
//! parallelogram spanned by a_p and a_q; it equals
//! |det(a_p, a_q)| / covolume and is the sublattice index of
//! Z a_p + Z a_q in A_l.  Degenerate pairs (a zero coefficient, or a
//! real ratio a_q/a_p) count as 0.

use crate::forms::{cross_det, ClassifiedForm};
use crate::rat::{rat_floor, GaussRat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("value group has rank < 2; internal inconsistency for a certified L2 form")]
    RankDeficient,
    #[error("value {0:?} is not a lattice point")]
    NotInLattice(Box<GaussRat>),
    #[error("|det(a_p, a_q)| / covolume is not an integer; internal inconsistency")]
    NonIntegerIndex,
    #[error("parallelogram is degenerate: zero coefficient or real ratio")]
    DegenerateParallelogram,
}

/// Rank-2 lattice Z w1 + Z w2 in C with Im(w2/w1) > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueLattice {
    w1: GaussRat,
    w2: GaussRat,
    t_lat: GaussRat,
    covolume: Rat,
}

impl ValueLattice {
    /// Build from explicit generators, swapping them if needed so that
    /// Im(w2/w1) > 0.  Fails when the ratio is real.
    pub fn from_generators(w1: GaussRat, w2: GaussRat) -> Result<Self, LatticeError> {
        if w1.is_zero() || w2.is_zero() || cross_det(&w1, &w2).is_zero() {
            return Err(LatticeError::RankDeficient);
        }
        let t = &w2 / &w1;
        let (w1, w2, t_lat) = if t.im.is_positive() { (w1, w2, t) } else { (w2.clone(), w1, t.inv()) };
        let covolume = cross_det(&w1, &w2);
        debug_assert!(covolume.is_positive());
        Ok(ValueLattice { w1, w2, t_lat, covolume })
    }

    pub fn w1(&self) -> &GaussRat {
        &self.w1
    }

    pub fn w2(&self) -> &GaussRat {
        &self.w2
    }

    /// T = w2/w1; Im T > 0 by the orientation rule.
    pub fn t_lat(&self) -> &GaussRat {
        &self.t_lat
    }

    pub fn covolume(&self) -> &Rat {
        &self.covolume
    }

    /// Rational coordinates (x, y) with v = x w1 + y w2.
    fn coords(&self, v: &GaussRat) -> (Rat, Rat) {
        let det = cross_det(&self.w1, &self.w2);
        let x = (&v.re * &self.w2.im - &v.im * &self.w2.re) / &det;
        let y = (&self.w1.re * &v.im - &self.w1.im * &v.re) / &det;
        (x, y)
    }

    /// Unique integers (m1, m2) with v = m1 w1 + m2 w2.
    pub fn decompose(&self, v: &GaussRat) -> Result<(BigInt, BigInt), LatticeError> {
        let (x, y) = self.coords(v);
        if !x.is_integer() || !y.is_integer() {
            return Err(LatticeError::NotInLattice(Box::new(v.clone())));
        }
        Ok((x.to_integer(), y.to_integer()))
    }

    pub fn contains(&self, v: &GaussRat) -> bool {
        let (x, y) = self.coords(v);
        x.is_integer() && y.is_integer()
    }

    /// Representative of v modulo the lattice inside the half-open
    /// fundamental parallelogram { s w1 + t w2 : 0 <= s, t < 1 }.
    pub fn reduce(&self, v: &GaussRat) -> GaussRat {
        let (x, y) = self.coords(v);
        let fx = &x - &Rat::from_integer(rat_floor(&x));
        let fy = &y - &Rat::from_integer(rat_floor(&y));
        &self.w1.scale(&fx) + &self.w2.scale(&fy)
    }
}

/// Serialized form: just the generators.  Deserialization rebuilds the
/// lattice through `from_generators`, so orientation and rank are
/// revalidated on load.
#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    w1: GaussRat,
    w2: GaussRat,
}

impl Serialize for ValueLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LatticeRepr { w1: self.w1.clone(), w2: self.w2.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ValueLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LatticeRepr::deserialize(d)?;
        ValueLattice::from_generators(repr.w1, repr.w2).map_err(serde::de::Error::custom)
    }
}

/// One step of an extended-gcd fold: combine accumulated column `acc`
/// (with its expression `acc_combo` in the original generators) and a
/// new column so the tracked entry becomes gcd(acc_entry, new_entry).
struct Fold {
    acc: (BigInt, BigInt),
    combo: Vec<BigInt>,
}

fn fold_gcd(
    state: Option<Fold>,
    col: &(BigInt, BigInt),
    combo: &[BigInt],
    entry: impl Fn(&(BigInt, BigInt)) -> BigInt,
) -> Option<Fold> {
    let e_col = entry(col);
    if e_col.is_zero() {
        return state;
    }
    match state {
        None => Some(Fold { acc: col.clone(), combo: combo.to_vec() }),
        Some(Fold { acc, combo: acc_combo }) => {
            let ext = entry(&acc).extended_gcd(&e_col);
            let new_acc = (
                &ext.x * &acc.0 + &ext.y * &col.0,
                &ext.x * &acc.1 + &ext.y * &col.1,
            );
            let new_combo = acc_combo
                .iter()
                .zip(combo.iter())
                .map(|(a, b)| &ext.x * a + &ext.y * b)
                .collect();
            Some(Fold { acc: new_acc, combo: new_combo })
        }
    }
}

/// Canonical basis of the subgroup of C generated by the coefficients,
/// provided it has rank 2.  Tracks integer combinations so the basis is
/// constructively inside the generated group.
pub fn lattice_from_coeffs(a: &[GaussRat]) -> Option<ValueLattice> {
    let n = a.len();
    let mut d = BigInt::one();
    for aj in a {
        d = d.lcm(aj.re.denom()).lcm(aj.im.denom());
    }
    let dr = Rat::from_integer(d.clone());
    let cols: Vec<(BigInt, BigInt)> = a
        .iter()
        .map(|aj| ((&aj.re * &dr).to_integer(), (&aj.im * &dr).to_integer()))
        .collect();
    let unit = |j: usize| {
        let mut v = vec![BigInt::zero(); n];
        v[j] = BigInt::one();
        v
    };

    // First basis vector v with v.1 = gcd of all imaginary entries.
    let mut v_state: Option<Fold> = None;
    for (j, col) in cols.iter().enumerate() {
        v_state = fold_gcd(v_state, col, &unit(j), |c| c.1.clone());
    }
    let mut v = v_state?;
    if v.acc.1.is_negative() {
        v.acc = (-&v.acc.0, -&v.acc.1);
        v.combo = v.combo.iter().map(|x| -x).collect();
    }
    let g2 = v.acc.1.clone();
    debug_assert!(g2.is_positive());

    // Remaining columns reduced to the real axis; their gcd gives u.
    let mut u_state: Option<Fold> = None;
    for (j, col) in cols.iter().enumerate() {
        let t = &col.1 / &g2;
        let reduced = (&col.0 - &t * &v.acc.0, BigInt::zero());
        let mut combo = unit(j);
        for (cj, vj) in combo.iter_mut().zip(v.combo.iter()) {
            *cj -= &t * vj;
        }
        u_state = fold_gcd(u_state, &reduced, &combo, |c| c.0.clone());
    }
    let mut u = u_state?;
    if u.acc.0.is_negative() {
        u.acc = (-&u.acc.0, BigInt::zero());
        u.combo = u.combo.iter().map(|x| -x).collect();
    }
    let d1 = u.acc.0.clone();
    if d1.is_zero() {
        return None;
    }

    // Normalize v.0 into [0, d1).
    let shift = v.acc.0.div_floor(&d1);
    v.acc.0 -= &shift * &d1;
    for (vj, uj) in v.combo.iter_mut().zip(u.combo.iter()) {
        *vj -= &shift * uj;
    }
    debug_assert!(!v.acc.0.is_negative() && v.acc.0 < d1);

    // The tracked combinations certify that u and v lie in the group
    // generated by the columns.
    debug_assert_eq!(recombine(&cols, &u.combo), u.acc);
    debug_assert_eq!(recombine(&cols, &v.combo), v.acc);

    let w1 = GaussRat::new(Rat::new(d1.clone(), d.clone()), Rat::zero());
    let w2 = GaussRat::new(Rat::new(v.acc.0.clone(), d.clone()), Rat::new(g2, d));
    let lat = ValueLattice::from_generators(w1, w2).ok()?;
    debug_assert!(a.iter().all(|aj| lat.contains(aj)));
    Some(lat)
}

fn recombine(cols: &[(BigInt, BigInt)], combo: &[BigInt]) -> (BigInt, BigInt) {
    let mut acc = (BigInt::zero(), BigInt::zero());
    for (c, k) in cols.iter().zip(combo.iter()) {
        acc.0 += &c.0 * k;
        acc.1 += &c.1 * k;
    }
    acc
}

/// Value lattice of a classified L2 form.  Fails with `RankDeficient`
/// when the coefficients span a group of rank < 2 (an L1 form, or an
/// internal inconsistency for certified L2 input).
pub fn value_lattice(cf: &ClassifiedForm) -> Result<ValueLattice, LatticeError> {
    lattice_from_coeffs(cf.a()).ok_or(LatticeError::RankDeficient)
}

/// Parallelogram count nu_pq: the number of value-lattice points in the
/// half-open parallelogram spanned by a_p and a_q.  Zero when a_p or
/// a_q vanishes or their ratio is real; otherwise the exact positive
/// integer |det(a_p, a_q)| / covolume.
pub fn nu(cf: &ClassifiedForm, p: usize, q: usize) -> Result<u64, LatticeError> {
    assert!(p != q, "nu requires distinct indices");
    let a = cf.a();
    if a[p].is_zero() || a[q].is_zero() {
        return Ok(0);
    }
    let det = cross_det(&a[p], &a[q]);
    if det.is_zero() {
        return Ok(0);
    }
    let lat = value_lattice(cf)?;
    let ratio = det.abs() / lat.covolume();
    if !ratio.is_integer() {
        return Err(LatticeError::NonIntegerIndex);
    }
    let count = ratio.to_integer();
    debug_assert!(count.is_positive());
    u64::try_from(count).map_err(|_| LatticeError::NonIntegerIndex)
}

/// The coset representatives x_1 = 0, ..., x_nu of the value lattice in
/// the half-open parallelogram P_pq, ordered by their (alpha, beta)
/// coordinates relative to (a_p, a_q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSystem {
    pub p: usize,
    pub q: usize,
    pub reps: Vec<GaussRat>,
}

pub fn coset_reps(cf: &ClassifiedForm, p: usize, q: usize) -> Result<CosetSystem, LatticeError> {
    assert!(p != q, "coset_reps requires distinct indices");
    let a = cf.a();
    if a[p].is_zero() || a[q].is_zero() {
        return Err(LatticeError::DegenerateParallelogram);
    }
    let det = cross_det(&a[p], &a[q]);
    if det.is_zero() {
        return Err(LatticeError::DegenerateParallelogram);
    }
    let lat = value_lattice(cf)?;
    let expected = nu(cf, p, q)?;

    let (m1p, m2p) = lat.decompose(&a[p])?;
    let (m1q, m2q) = lat.decompose(&a[q])?;
    let corners = [
        (BigInt::zero(), BigInt::zero()),
        (m1p.clone(), m2p.clone()),
        (m1q.clone(), m2q.clone()),
        (&m1p + &m1q, &m2p + &m2q),
    ];
    let lo1 = corners.iter().map(|c| c.0.clone()).min().unwrap();
    let hi1 = corners.iter().map(|c| c.0.clone()).max().unwrap();
    let lo2 = corners.iter().map(|c| c.1.clone()).min().unwrap();
    let hi2 = corners.iter().map(|c| c.1.clone()).max().unwrap();

    let mut found: Vec<(Rat, Rat, GaussRat)> = Vec::new();
    let mut j1 = lo1.clone();
    while j1 <= hi1 {
        let mut j2 = lo2.clone();
        while j2 <= hi2 {
            let w = &lat.w1().scale(&Rat::from_integer(j1.clone()))
                + &lat.w2().scale(&Rat::from_integer(j2.clone()));
            let alpha = (&w.re * &a[q].im - &w.im * &a[q].re) / &det;
            let beta = (&a[p].re * &w.im - &a[p].im * &w.re) / &det;
            let in_range = |x: &Rat| !x.is_negative() && *x < Rat::one();
            if in_range(&alpha) && in_range(&beta) {
                found.push((alpha, beta, w));
            }
            j2 += BigInt::one();
        }
        j1 += BigInt::one();
    }
    found.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)));
    assert_eq!(
        found.len() as u64,
        expected,
        "coset enumeration disagrees with the determinant count"
    );
    assert!(found[0].2.is_zero(), "the zero representative must come first");
    Ok(CosetSystem { p, q, reps: found.into_iter().map(|x| x.2).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{classify, LinearForm};
    use crate::rat::{rat_frac, rat_i64};

    fn g(nr: i64, dr: i64, ni: i64, di: i64) -> GaussRat {
        GaussRat::from_fracs(nr, dr, ni, di)
    }

    fn classified(a: Vec<GaussRat>) -> ClassifiedForm {
        classify(LinearForm::new(a, GaussRat::zero(), 1).unwrap())
    }

    #[test]
    fn unit_lattice() {
        let cf = classified(vec![GaussRat::one(), GaussRat::i()]);
        let lat = value_lattice(&cf).unwrap();
        assert_eq!(*lat.w1(), GaussRat::one());
        assert_eq!(*lat.w2(), GaussRat::i());
        assert_eq!(*lat.covolume(), Rat::one());
        assert_eq!(lat.decompose(&GaussRat::i()).unwrap(), (BigInt::zero(), BigInt::one()));
    }

    #[test]
    fn half_integer_lattice() {
        let cf = classified(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)]);
        let lat = value_lattice(&cf).unwrap();
        assert_eq!(*lat.w1(), g(1, 2, 0, 1));
        assert_eq!(*lat.w2(), GaussRat::i());
        assert_eq!(*lat.covolume(), rat_frac(1, 2));
        assert_eq!(
            lat.decompose(&GaussRat::one()).unwrap(),
            (BigInt::from(2), BigInt::zero())
        );
    }

    #[test]
    fn skew_lattice() {
        // a = (2, 1+i): normal form of {(2,0),(1,1)} is w1=2, w2=1+i.
        let cf = classified(vec![GaussRat::from_int(2), g(1, 1, 1, 1)]);
        let lat = value_lattice(&cf).unwrap();
        assert_eq!(*lat.w1(), GaussRat::from_int(2));
        assert_eq!(*lat.w2(), g(1, 1, 1, 1));
        assert_eq!(*lat.covolume(), rat_i64(2));
        for aj in cf.a() {
            assert!(lat.contains(aj));
        }
    }

    #[test]
    fn decompose_in_explicit_basis() {
        // Same group presented by w1 = 1+i, w2 = 2i: then 2 = 2 w1 - w2.
        let lat = ValueLattice::from_generators(g(1, 1, 1, 1), g(0, 1, 2, 1)).unwrap();
        assert_eq!(*lat.w1(), g(1, 1, 1, 1));
        assert_eq!(
            lat.decompose(&GaussRat::from_int(2)).unwrap(),
            (BigInt::from(2), BigInt::from(-1))
        );
        assert_eq!(
            lat.decompose(&GaussRat::from_real(rat_frac(1, 2))),
            Err(LatticeError::NotInLattice(Box::new(GaussRat::from_real(rat_frac(1, 2)))))
        );
    }

    #[test]
    fn orientation_swap() {
        let lat = ValueLattice::from_generators(GaussRat::one(), -GaussRat::i()).unwrap();
        assert!(lat.t_lat().im.is_positive());
        assert_eq!(*lat.covolume(), Rat::one());
    }

    #[test]
    fn degenerate_generators_rejected() {
        assert_eq!(
            ValueLattice::from_generators(GaussRat::one(), GaussRat::from_int(3)),
            Err(LatticeError::RankDeficient)
        );
        assert_eq!(
            ValueLattice::from_generators(GaussRat::zero(), GaussRat::i()),
            Err(LatticeError::RankDeficient)
        );
    }

    #[test]
    fn reduce_into_parallelogram() {
        let cf = classified(vec![GaussRat::one(), GaussRat::i()]);
        let lat = value_lattice(&cf).unwrap();
        let v = g(5, 2, -1, 3);
        let r = lat.reduce(&v);
        assert_eq!(r, g(1, 2, 2, 3));
        assert!(lat.contains(&(&v - &r)));
    }

    #[test]
    fn nu_worked_cases() {
        let unit = classified(vec![GaussRat::one(), GaussRat::i()]);
        assert_eq!(nu(&unit, 0, 1).unwrap(), 1);

        let half = classified(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)]);
        assert_eq!(nu(&half, 0, 1).unwrap(), 2);
        assert_eq!(nu(&half, 1, 0).unwrap(), 2);
        assert_eq!(nu(&half, 0, 2).unwrap(), 0); // real ratio

        let with_zero = classified(vec![GaussRat::one(), GaussRat::i(), GaussRat::zero()]);
        assert_eq!(nu(&with_zero, 0, 2).unwrap(), 0);
    }

    #[test]
    fn coset_reps_worked_cases() {
        let unit = classified(vec![GaussRat::one(), GaussRat::i()]);
        let cs = coset_reps(&unit, 0, 1).unwrap();
        assert_eq!(cs.reps, vec![GaussRat::zero()]);

        let half = classified(vec![GaussRat::one(), GaussRat::i(), g(1, 2, 0, 1)]);
        let cs = coset_reps(&half, 0, 1).unwrap();
        assert_eq!(cs.reps, vec![GaussRat::zero(), g(1, 2, 0, 1)]);

        let cs = coset_reps(&half, 1, 2).unwrap();
        assert_eq!(cs.reps, vec![GaussRat::zero()]);

        assert_eq!(
            coset_reps(&half, 0, 2),
            Err(LatticeError::DegenerateParallelogram)
        );
    }

    #[test]
    fn covolume_times_nu_is_det() {
        let cf = classified(vec![g(1, 1, 1, 2), g(-1, 3, 2, 1), g(0, 1, 1, 5)]);
        let lat = value_lattice(&cf).unwrap();
        let a = cf.a();
        for p in 0..3 {
            for q in 0..3 {
                if p == q {
                    continue;
                }
                let count = nu(&cf, p, q).unwrap();
                let det = cross_det(&a[p], &a[q]).abs();
                if count > 0 {
                    assert_eq!(
                        lat.covolume() * Rat::from_integer(BigInt::from(count)),
                        det
                    );
                }
            }
        }
    }
}
