use crate::polyring::{Poly, VarSet};

const GREEK: &[&str] = &[
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu",
    "nu", "xi", "pi", "rho", "sigma", "tau", "phi", "chi", "psi", "omega",
];

/// `alpha` -> `\alpha`, `a12` -> `a_{12}`, anything else verbatim.
fn latex_name(name: &str) -> String {
    if GREEK.contains(&name) {
        return format!("\\{name}");
    }
    let split = name.find(|c: char| c.is_ascii_digit());
    match split {
        Some(i) if i > 0 && name[i..].bytes().all(|b| b.is_ascii_digit()) => {
            let (stem, idx) = name.split_at(i);
            let stem = if GREEK.contains(&stem) { format!("\\{stem}") } else { stem.to_string() };
            format!("{stem}_{{{idx}}}")
        }
        _ => name.to_string(),
    }
}

fn latex_monomial(vars: &VarSet, exps: &[u32]) -> String {
    let mut out = String::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = latex_name(&vars.names()[i]);
        // Separate adjacent command names so `\alpha\beta` stays readable.
        if name.starts_with('\\') && !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&name);
        match e {
            1 => {}
            2..=9 => out.push_str(&format!("^{e}")),
            _ => out.push_str(&format!("^{{{e}}}")),
        }
        if name.starts_with('\\') && e == 1 {
            out.push(' ');
        }
    }
    out.trim_end().to_string()
}

impl Poly {
    /// Expanded LaTeX form in canonical order, e.g. `4x^2yz+y^3z+yz^3`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let abs = c.abs();
            let mono = latex_monomial(self.vars(), m.exps());
            let coeff = if abs.is_integer() {
                abs.to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&coeff);
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Scalar;

    #[test]
    fn latex_forms() {
        let v = VarSet::xyz();
        let p = Poly::from_terms(
            &v,
            [
                (vec![2, 1, 1], Scalar::from(4)),
                (vec![0, 3, 1], Scalar::from(1)),
                (vec![0, 1, 3], Scalar::from(1)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_latex(), "4x^2yz+y^3z+yz^3");
        assert_eq!(Poly::zero(&v).to_latex(), "0");
        assert_eq!(Poly::constant(&v, Scalar::ratio(-1, 2)).to_latex(), "-\\frac{1}{2}");
    }

    #[test]
    fn latex_names() {
        assert_eq!(latex_name("alpha"), "\\alpha");
        assert_eq!(latex_name("a12"), "a_{12}");
        assert_eq!(latex_name("X"), "X");
        let v = VarSet::new(["alpha", "a0"]).unwrap();
        let p = Poly::from_terms(&v, [(vec![1, 11], Scalar::from(1))]).unwrap();
        assert_eq!(p.to_latex(), "\\alpha a_{0}^{11}");
    }
}
