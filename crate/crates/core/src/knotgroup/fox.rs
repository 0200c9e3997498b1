use super::{build_word_w, exponent_sum, Generator, GroupRingElement, Letter, Word};
use crate::algebra::dd::{to_dd, Mat2Dd, Mat2LDd};
use crate::algebra::{LaurentPoly, Mat2, Mat2L};
use crate::{Error, Result, C64};

/// Tolerance on `|det - 1|` for matrices fed to [`phi_eval`].
const SL2_TOL: f64 = 1e-8;

/// The one-relator presentation `<a, b | r>` of J(2m,2n) with
/// `r = w^n a w^-n b^-1` and `w = (b a^-1)^m (b^-1 a)^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub m: i64,
    pub n: i64,
    pub w: Word,
    pub relator: Word,
}

impl Presentation {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroParameter);
        }
        let w = build_word_w(m)?;
        let wn = w.pow(n);
        let relator = Word::new(
            wn.letters()
                .iter()
                .copied()
                .chain([Letter::A])
                .chain(wn.inverse().letters().iter().copied())
                .chain([Letter::B_INV]),
        );
        Ok(Presentation { m, n, w, relator })
    }
}

/// Fox derivative `d u / d g`.
///
/// Computed letter by letter from `d(uv) = du + u dv`: an occurrence of
/// `g` after prefix `p` contributes `+p`, an occurrence of `g^-1`
/// contributes `-p g^-1`.
pub fn fox_derivative(u: &Word, g: Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let letters = u.letters();
    for (i, l) in letters.iter().enumerate() {
        if l.gen != g {
            continue;
        }
        if l.inverse {
            out.add_term(Word::new(letters[..=i].iter().copied()), -1);
        } else {
            out.add_term(Word::new(letters[..i].iter().copied()), 1);
        }
    }
    out
}

/// `rho(u)` as the ordered product of the letter matrices.
pub fn eval_word(u: &Word, rho_a: &Mat2, rho_b: &Mat2) -> Mat2 {
    let (a_inv, b_inv) = (rho_a.inverse(), rho_b.inverse());
    u.letters()
        .iter()
        .fold(Mat2::identity(), |acc, l| {
            acc * match (l.gen, l.inverse) {
                (Generator::A, false) => *rho_a,
                (Generator::A, true) => a_inv,
                (Generator::B, false) => *rho_b,
                (Generator::B, true) => b_inv,
            }
        })
}

/// The ring homomorphism `Phi = rho (x) abelianisation`, sending a word
/// `u` to `rho(u) t^{exponent_sum(u)}`.
pub fn phi_eval(e: &GroupRingElement, rho_a: &Mat2, rho_b: &Mat2) -> Result<Mat2L> {
    rho_a.check_unimodular(SL2_TOL)?;
    rho_b.check_unimodular(SL2_TOL)?;
    let mut acc = Mat2L::zero();
    for (u, c) in e.iter() {
        let m = eval_word(u, rho_a, rho_b).scale((c as f64).into());
        acc = &acc + &Mat2L::monomial(&m, exponent_sum(u));
    }
    Ok(acc)
}

/// Generator images `rho(a) = [[s, 1], [0, 1/s]]`,
/// `rho(b) = [[s, 0], [2 - y, 1/s]]` held in double-double, with `1/s`
/// refined so both have determinant one to that precision.
#[derive(Debug, Clone, Copy)]
pub struct PreciseImages {
    a: Mat2Dd,
    a_inv: Mat2Dd,
    b: Mat2Dd,
    b_inv: Mat2Dd,
}

impl PreciseImages {
    pub fn new(s: C64, y: C64) -> Result<Self> {
        if s.norm() < 1e-12 {
            return Err(Error::SingularS);
        }
        let one = to_dd(C64::new(1.0, 0.0));
        let zero = to_dd(C64::new(0.0, 0.0));
        let s_dd = to_dd(s);
        let mut si = to_dd(s.inv());
        for _ in 0..2 {
            si = si * (to_dd(C64::new(2.0, 0.0)) - s_dd * si);
        }
        let a = Mat2Dd::new(s_dd, one, zero, si);
        let b = Mat2Dd::new(s_dd, zero, to_dd(2.0 - y), si);
        Ok(PreciseImages {
            a,
            a_inv: a.unimodular_inverse(),
            b,
            b_inv: b.unimodular_inverse(),
        })
    }

    pub fn eval_word(&self, u: &Word) -> Mat2Dd {
        u.letters().iter().fold(Mat2Dd::identity(), |acc, l| {
            acc * match (l.gen, l.inverse) {
                (Generator::A, false) => self.a,
                (Generator::A, true) => self.a_inv,
                (Generator::B, false) => self.b,
                (Generator::B, true) => self.b_inv,
            }
        })
    }

    /// `Phi(e)` accumulated in double-double.
    pub fn phi(&self, e: &GroupRingElement) -> Mat2LDd {
        let mut acc = Mat2LDd::zero();
        for (u, c) in e.iter() {
            acc.add_monomial(self.eval_word(u).scale_int(c), exponent_sum(u));
        }
        acc
    }

    /// `det Phi(e)`, rounded to double only at the end.
    pub fn phi_det(&self, e: &GroupRingElement) -> LaurentPoly {
        self.phi(e).det()
    }
}
