use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{AlgebraError, Alphabet, CanonicalForm};

/// Surface syntax tree for ring elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expression {
    Var(String),
    /// The additive identity. There is no multiplicative one.
    Zero,
    Sum(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Scalar(BigInt, Box<Expression>),
    Product(Box<Expression>, Box<Expression>),
    /// Exponent is at least 1.
    Power(Box<Expression>, u32),
    Commutator(Box<Expression>, Box<Expression>),
    /// `ad(op)^k(arg)`, the k-fold nested commutator `[op,[op,…[op,arg]…]]`.
    AdPow {
        op: Box<Expression>,
        k: u32,
        arg: Box<Expression>,
    },
}

/// Simultaneous replacement of variables by expressions.
pub type Substitution = BTreeMap<String, Expression>;

impl Expression {
    pub fn var(name: impl Into<String>) -> Self {
        Expression::Var(name.into())
    }

    pub fn sum(a: Expression, b: Expression) -> Self {
        Expression::Sum(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expression, b: Expression) -> Self {
        Expression::sum(a, Expression::neg(b))
    }

    pub fn neg(a: Expression) -> Self {
        Expression::Neg(Box::new(a))
    }

    pub fn scalar(k: impl Into<BigInt>, a: Expression) -> Self {
        Expression::Scalar(k.into(), Box::new(a))
    }

    pub fn product(a: Expression, b: Expression) -> Self {
        Expression::Product(Box::new(a), Box::new(b))
    }

    /// Panics if `k == 0`; the parser rejects zero exponents before this point.
    pub fn power(a: Expression, k: u32) -> Self {
        assert!(k >= 1, "exponent must be at least 1");
        Expression::Power(Box::new(a), k)
    }

    pub fn commutator(a: Expression, b: Expression) -> Self {
        Expression::Commutator(Box::new(a), Box::new(b))
    }

    pub fn ad_pow(op: Expression, k: u32, arg: Expression) -> Self {
        assert!(k >= 1, "ad iterate must be at least 1");
        Expression::AdPow {
            op: Box::new(op),
            k,
            arg: Box::new(arg),
        }
    }

    /// Variable names in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expression::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expression::Zero => {}
            Expression::Neg(a) | Expression::Scalar(_, a) | Expression::Power(a, _) => a.collect_vars(out),
            Expression::Sum(a, b) | Expression::Product(a, b) | Expression::Commutator(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expression::AdPow { op, arg, .. } => {
                op.collect_vars(out);
                arg.collect_vars(out);
            }
        }
    }

    /// Node count, used to bound generated test inputs.
    pub fn size(&self) -> usize {
        match self {
            Expression::Var(_) | Expression::Zero => 1,
            Expression::Neg(a) | Expression::Scalar(_, a) | Expression::Power(a, _) => 1 + a.size(),
            Expression::Sum(a, b) | Expression::Product(a, b) | Expression::Commutator(a, b) => {
                1 + a.size() + b.size()
            }
            Expression::AdPow { op, arg, .. } => 1 + op.size() + arg.size(),
        }
    }

    fn map_vars<F>(&self, f: &mut F) -> Result<Expression, AlgebraError>
    where
        F: FnMut(&str) -> Result<Expression, AlgebraError>,
    {
        Ok(match self {
            Expression::Var(v) => f(v)?,
            Expression::Zero => Expression::Zero,
            Expression::Sum(a, b) => Expression::sum(a.map_vars(f)?, b.map_vars(f)?),
            Expression::Neg(a) => Expression::neg(a.map_vars(f)?),
            Expression::Scalar(k, a) => Expression::Scalar(k.clone(), Box::new(a.map_vars(f)?)),
            Expression::Product(a, b) => Expression::product(a.map_vars(f)?, b.map_vars(f)?),
            Expression::Power(a, k) => Expression::Power(Box::new(a.map_vars(f)?), *k),
            Expression::Commutator(a, b) => Expression::commutator(a.map_vars(f)?, b.map_vars(f)?),
            Expression::AdPow { op, k, arg } => Expression::AdPow {
                op: Box::new(op.map_vars(f)?),
                k: *k,
                arg: Box::new(arg.map_vars(f)?),
            },
        })
    }

    /// Replaces variables bound in `defs` and leaves the rest alone.
    pub fn expand(&self, defs: &BTreeMap<String, Expression>) -> Expression {
        self.map_vars(&mut |v| Ok(defs.get(v).cloned().unwrap_or_else(|| Expression::var(v))))
            .expect("partial expansion is total")
    }
}

/// Simultaneous substitution. Every variable of `e` must be bound.
pub fn apply_substitution(e: &Expression, sigma: &Substitution) -> Result<Expression, AlgebraError> {
    e.map_vars(&mut |v| {
        sigma
            .get(v)
            .cloned()
            .ok_or_else(|| AlgebraError::UnboundVariable(v.to_string()))
    })
}

/// Expands `e` into its canonical form over `alphabet`.
pub fn normalize(e: &Expression, alphabet: &Alphabet) -> Result<CanonicalForm, AlgebraError> {
    Ok(match e {
        Expression::Var(v) => {
            let g = alphabet
                .index_of(v)
                .ok_or_else(|| AlgebraError::UnknownGenerator(v.clone()))?;
            CanonicalForm::generator(g)
        }
        Expression::Zero => CanonicalForm::zero(),
        Expression::Sum(a, b) => &normalize(a, alphabet)? + &normalize(b, alphabet)?,
        Expression::Neg(a) => -&normalize(a, alphabet)?,
        Expression::Scalar(k, a) => normalize(a, alphabet)?.scale(k),
        Expression::Product(a, b) => normalize(a, alphabet)?.mul(&normalize(b, alphabet)?),
        Expression::Power(a, k) => {
            if *k == 0 {
                return Err(AlgebraError::ZeroExponent);
            }
            normalize(a, alphabet)?.pow(*k)
        }
        Expression::Commutator(a, b) => normalize(a, alphabet)?.commutator(&normalize(b, alphabet)?),
        Expression::AdPow { op, k, arg } => {
            if *k == 0 {
                return Err(AlgebraError::ZeroExponent);
            }
            let op = normalize(op, alphabet)?;
            let mut acc = normalize(arg, alphabet)?;
            for _ in 0..*k {
                acc = op.commutator(&acc);
            }
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    fn x() -> Expression {
        Expression::var("x")
    }
    fn y() -> Expression {
        Expression::var("y")
    }
    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }
    fn w(l: &[u16]) -> Word {
        Word::new(l.to_vec()).unwrap()
    }

    #[test]
    fn commutator_unfolds() {
        let f = normalize(&Expression::commutator(x(), y()), &xy()).unwrap();
        assert_eq!(
            f,
            CanonicalForm::from_terms([(w(&[0, 1]), 1.into()), (w(&[1, 0]), (-1).into())])
        );
    }

    #[test]
    fn ad_squared() {
        // [x,[x,y]] = xxy - 2xyx + yxx
        let f = normalize(&Expression::ad_pow(x(), 2, y()), &xy()).unwrap();
        assert_eq!(
            f,
            CanonicalForm::from_terms([
                (w(&[0, 0, 1]), 1.into()),
                (w(&[0, 1, 0]), (-2).into()),
                (w(&[1, 0, 0]), 1.into()),
            ])
        );
    }

    #[test]
    fn unknown_generator() {
        let err = normalize(&Expression::var("z"), &xy()).unwrap_err();
        assert!(matches!(err, AlgebraError::UnknownGenerator(ref g) if g == "z"));
    }

    #[test]
    fn substitution_instances() {
        let c = Alphabet::new(["x"]).unwrap();
        let sq = Expression::power(Expression::var("c"), 2);
        let sigma: Substitution = [("c".to_string(), Expression::sum(Expression::power(x(), 2), x()))].into();
        let inst = apply_substitution(&sq, &sigma).unwrap();
        // (x^2 + x)^2 = x^4 + 2x^3 + x^2
        assert_eq!(
            normalize(&inst, &c).unwrap(),
            CanonicalForm::from_terms([
                (w(&[0, 0, 0, 0]), 1.into()),
                (w(&[0, 0, 0]), 2.into()),
                (w(&[0, 0]), 1.into()),
            ])
        );

        let id: Substitution = [("x".to_string(), x())].into();
        assert_eq!(apply_substitution(&x(), &id).unwrap(), x());

        let swap: Substitution = [("x".to_string(), y()), ("y".to_string(), x())].into();
        let s = apply_substitution(&Expression::commutator(x(), y()), &swap).unwrap();
        assert_eq!(
            normalize(&s, &xy()).unwrap(),
            CanonicalForm::from_terms([(w(&[1, 0]), 1.into()), (w(&[0, 1]), (-1).into())])
        );
    }

    #[test]
    fn missing_binding() {
        let sigma: Substitution = [("x".to_string(), y())].into();
        let err = apply_substitution(&Expression::commutator(x(), y()), &sigma).unwrap_err();
        assert!(matches!(err, AlgebraError::UnboundVariable(ref v) if v == "y"));
    }

    #[test]
    fn binomial_square_cancels() {
        let s = Expression::sum(x(), y());
        let e = Expression::sub(
            Expression::sub(
                Expression::sub(
                    Expression::sub(Expression::power(s, 2), Expression::power(x(), 2)),
                    Expression::product(x(), y()),
                ),
                Expression::product(y(), x()),
            ),
            Expression::power(y(), 2),
        );
        assert!(normalize(&e, &xy()).unwrap().is_zero());
    }
}
