//! Small helpers for unit tests: auxiliary-variable rings and a tiny
//! polynomial reader (`x^2*y - 3/2*z + 1`, parentheses allowed).

use alloc::{string::String, vec::Vec};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{Polynomial, VariableId, Variables};

pub fn ring(names: &[&str]) -> Variables {
    Variables::new(names.iter().map(|n| VariableId::auxiliary(n, 0)))
}

pub fn p(vars: &Variables, text: &str) -> Polynomial {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let out = sum(vars, &chars, &mut pos);
    assert_eq!(pos, chars.len(), "trailing input in {text:?}");
    out
}

fn sum(vars: &Variables, s: &[char], pos: &mut usize) -> Polynomial {
    let mut acc = Polynomial::zero(vars);
    let mut sign = true;
    if s.get(*pos) == Some(&'-') {
        sign = false;
        *pos += 1;
    }
    loop {
        let t = product(vars, s, pos);
        acc = if sign { &acc + &t } else { &acc - &t };
        match s.get(*pos) {
            Some('+') => sign = true,
            Some('-') => sign = false,
            _ => return acc,
        }
        *pos += 1;
    }
}

fn product(vars: &Variables, s: &[char], pos: &mut usize) -> Polynomial {
    let mut acc = power(vars, s, pos);
    while s.get(*pos) == Some(&'*') {
        *pos += 1;
        acc = &acc * &power(vars, s, pos);
    }
    acc
}

fn power(vars: &Variables, s: &[char], pos: &mut usize) -> Polynomial {
    let base = atom(vars, s, pos);
    if s.get(*pos) == Some(&'^') {
        *pos += 1;
        let e = digits(s, pos);
        return base.pow(e.parse().unwrap());
    }
    base
}

fn atom(vars: &Variables, s: &[char], pos: &mut usize) -> Polynomial {
    let c = s[*pos];
    if c == '(' {
        *pos += 1;
        let inner = sum(vars, s, pos);
        assert_eq!(s[*pos], ')');
        *pos += 1;
        inner
    } else if c.is_ascii_digit() {
        let num: BigInt = digits(s, pos).parse().unwrap();
        let mut q = BigRational::from_integer(num);
        if s.get(*pos) == Some(&'/') {
            *pos += 1;
            let den: BigInt = digits(s, pos).parse().unwrap();
            q /= BigRational::from_integer(den);
        }
        Polynomial::constant(vars, q)
    } else {
        let mut name = String::new();
        while *pos < s.len() && s[*pos].is_ascii_alphanumeric() {
            name.push(s[*pos]);
            *pos += 1;
        }
        Polynomial::variable(vars, &VariableId::auxiliary(&name, 0))
            .unwrap_or_else(|| panic!("unknown variable {name}"))
    }
}

fn digits(s: &[char], pos: &mut usize) -> String {
    let mut out = String::new();
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        out.push(s[*pos]);
        *pos += 1;
    }
    out
}
