use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign};
use std::sync::OnceLock;

/// Reduction polynomial `x^16 + x^12 + x^3 + x + 1`.
pub const MODULUS: u32 = 0x1100B;

const ORDER: usize = 65535;

/// Element of GF(2^16).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf216(pub u16);

struct Tables {
    log: Vec<u16>,
    exp: Vec<u16>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        assert!(is_irreducible(MODULUS), "GF(2^16) modulus is reducible");
        let g = (2u16..).find(|&g| is_generator(g)).expect("a generator exists");
        let mut exp = vec![0u16; 2 * ORDER];
        let mut log = vec![0u16; ORDER + 1];
        let mut x = 1u16;
        for (k, slot) in exp.iter_mut().enumerate().take(ORDER) {
            *slot = x;
            log[x as usize] = k as u16;
            x = mul_slow(x, g);
        }
        for k in ORDER..2 * ORDER {
            exp[k] = exp[k - ORDER];
        }
        Tables { log, exp }
    })
}

/// Carry-less multiply followed by reduction.
fn mul_slow(a: u16, b: u16) -> u16 {
    let mut acc: u32 = 0;
    for bit in 0..16 {
        if b >> bit & 1 == 1 {
            acc ^= (a as u32) << bit;
        }
    }
    for bit in (16..32).rev() {
        if acc >> bit & 1 == 1 {
            acc ^= MODULUS << (bit - 16);
        }
    }
    acc as u16
}

fn pow_slow(mut base: u16, mut e: u32) -> u16 {
    let mut acc = 1u16;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_slow(acc, base);
        }
        base = mul_slow(base, base);
        e >>= 1;
    }
    acc
}

fn is_generator(g: u16) -> bool {
    [3u32, 5, 17, 257].iter().all(|&q| pow_slow(g, ORDER as u32 / q) != 1)
}

fn degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1 through `deg(p) / 2`.
pub fn is_irreducible(p: u32) -> bool {
    let half = degree(p) / 2;
    (2u32..1u32 << (half + 1)).all(|d| poly_rem(p, d) != 0)
}

impl Gf216 {
    pub const ZERO: Gf216 = Gf216(0);
    pub const ONE: Gf216 = Gf216(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn inv(self) -> Option<Gf216> {
        if self.0 == 0 {
            return None;
        }
        let t = tables();
        let l = t.log[self.0 as usize] as usize;
        Some(Gf216(t.exp[(ORDER - l) % ORDER]))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(self, e: i64) -> Option<Gf216> {
        if self.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(Gf216::ONE),
                std::cmp::Ordering::Greater => Some(Gf216::ZERO),
            };
        }
        let t = tables();
        let l = t.log[self.0 as usize] as i64;
        let k = (l * e).rem_euclid(ORDER as i64) as usize;
        Some(Gf216(t.exp[k]))
    }
}

impl Add for Gf216 {
    type Output = Gf216;

    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add(self, rhs: Gf216) -> Gf216 {
        Gf216(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf216 {
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf216) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf216 {
    type Output = Gf216;

    fn mul(self, rhs: Gf216) -> Gf216 {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf216::ZERO;
        }
        let t = tables();
        Gf216(t.exp[t.log[self.0 as usize] as usize + t.log[rhs.0 as usize] as usize])
    }
}

impl MulAssign for Gf216 {
    fn mul_assign(&mut self, rhs: Gf216) {
        *self = *self * rhs;
    }
}

impl Div for Gf216 {
    type Output = Gf216;

    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn div(self, rhs: Gf216) -> Gf216 {
        self * rhs.inv().expect("division by zero in GF(2^16)")
    }
}

impl fmt::Display for Gf216 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#06x}", self.0)
    }
}
