use proptest::prelude::*;
use slicesyl::sampling::Sampler;
use slicesyl::{DomainMode, ScalarElem, SliceFn};
use slicesyl_cli::parse;

#[test]
fn display_parses_back_in_both_modes() {
    for mode in [DomainMode::Slice, DomainMode::Product] {
        let mut s = Sampler::new(2024, mode);
        for n in 0..1000 {
            let f = match (n % 4, mode) {
                (0, _) => s.slicefn(),
                (2, DomainMode::Product) => s.zero_divisor(),
                (3, DomainMode::Product) => s.idempotent(),
                _ => s.invertible(),
            };
            let text = f.to_string();
            let back = parse(&text, mode).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(back, f, "{text}");
        }
    }
}

#[derive(Clone, Debug)]
enum Expr {
    Int(i64),
    Var(char),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u8),
}

impl Expr {
    fn render(&self) -> String {
        match self {
            Expr::Int(n) => n.to_string(),
            Expr::Var(c) => c.to_string(),
            Expr::Neg(e) => format!("-({})", e.render()),
            Expr::Bin(op, a, b) => format!("({}) {op} ({})", a.render(), b.render()),
            Expr::Pow(e, n) => format!("({})^{n}", e.render()),
        }
    }

    fn eval(&self, mode: DomainMode) -> SliceFn {
        match self {
            Expr::Int(n) => SliceFn::from_ints([*n, 0, 0, 0], mode),
            Expr::Var('x') => SliceFn::from_scalar(ScalarElem::x(mode)),
            Expr::Var('J') => SliceFn::from_scalar(ScalarElem::j(mode).unwrap()),
            Expr::Var('i') => SliceFn::i(mode),
            Expr::Var('j') => SliceFn::j(mode),
            Expr::Var(_) => SliceFn::k(mode),
            Expr::Neg(e) => &SliceFn::zero(mode) - &e.eval(mode),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(mode), b.eval(mode));
                match op {
                    '+' => &a + &b,
                    '-' => &a - &b,
                    _ => &a * &b,
                }
            }
            Expr::Pow(e, n) => {
                let base = e.eval(mode);
                (0..*n).fold(SliceFn::one(mode), |acc, _| &acc * &base)
            }
        }
    }
}

fn expr(vars: &'static [char]) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(-5i64..6).prop_map(Expr::Int), proptest::sample::select(vars).prop_map(Expr::Var)];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (proptest::sample::select(&['+', '-', '*'][..]), inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
            (inner, 0u8..4).prop_map(|(e, n)| Expr::Pow(Box::new(e), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parsed_expressions_evaluate_like_the_algebra(e in expr(&['x', 'i', 'j', 'k']), p in expr(&['x', 'J', 'i', 'j', 'k'])) {
        prop_assert_eq!(parse(&e.render(), DomainMode::Slice).unwrap(), e.eval(DomainMode::Slice));
        prop_assert_eq!(parse(&p.render(), DomainMode::Product).unwrap(), p.eval(DomainMode::Product));
    }

    #[test]
    fn invertible_right_division_inverts_multiplication(seed in 0u64..1000) {
        let mut s = Sampler::with_degree(seed, DomainMode::Product, 2);
        let (a, b) = (s.slicefn(), s.invertible());
        let q = parse(&format!("({a}) / ({b})"), DomainMode::Product).unwrap();
        prop_assert_eq!(&q * &b, a);
    }
}
