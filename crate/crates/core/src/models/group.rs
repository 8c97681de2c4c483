use serde::Serialize;

use super::{ModelError, MAX_ORDER};

/// A finite abelian group presented as a direct sum of cyclic groups of
/// prime-power order. Element `i` has mixed-radix coordinates over `moduli`
/// (first modulus varies slowest); element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroupTable {
    pub order: usize,
    pub moduli: Vec<u8>,
    pub label: String,
    pub zero: usize,
    #[serde(rename = "addition")]
    add: Vec<Vec<u8>>,
    #[serde(skip)]
    neg: Vec<u8>,
    #[serde(skip)]
    coords: Vec<Vec<u8>>,
}

impl AbelianGroupTable {
    pub fn from_moduli(moduli: Vec<u8>) -> AbelianGroupTable {
        let order: usize = moduli.iter().map(|&d| d as usize).product();
        let coords: Vec<Vec<u8>> = (0..order).map(|i| decode(&moduli, i)).collect();
        let encode = |c: &[u8]| c.iter().zip(&moduli).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize);
        let add = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let s: Vec<u8> = coords[a]
                            .iter()
                            .zip(&coords[b])
                            .zip(&moduli)
                            .map(|((&x, &y), &d)| ((x as u16 + y as u16) % d as u16) as u8)
                            .collect();
                        encode(&s) as u8
                    })
                    .collect()
            })
            .collect();
        let neg = coords
            .iter()
            .map(|c| {
                let n: Vec<u8> = c.iter().zip(&moduli).map(|(&x, &d)| (d - x) % d).collect();
                encode(&n) as u8
            })
            .collect();
        let label = if moduli.is_empty() {
            "Z1".to_string()
        } else {
            moduli.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join(" x ")
        };
        AbelianGroupTable {
            order,
            moduli,
            label,
            zero: 0,
            add,
            neg,
            coords,
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn coords(&self, a: u8) -> &[u8] {
        &self.coords[a as usize]
    }

    pub fn addition_table(&self) -> &[Vec<u8>] {
        &self.add
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> u8 {
        let stride: usize = self.moduli[i + 1..].iter().map(|&d| d as usize).product();
        stride as u8
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `k·a`, with `k` already reduced to a nonnegative residue.
    pub fn scale(&self, k: u32, a: u8) -> u8 {
        let c = &self.coords[a as usize];
        let mut acc = 0usize;
        for (&x, &d) in c.iter().zip(&self.moduli) {
            acc = acc * d as usize + ((x as u32 * (k % d as u32)) % d as u32) as usize;
        }
        acc as u8
    }

    /// Elements whose additive order divides `n`.
    pub fn torsion(&self, n: u32) -> Vec<u8> {
        (0..self.order as u8).filter(|&a| self.scale(n, a) == 0).collect()
    }

    /// Exhaustive check of the abelian group axioms.
    pub fn verify(&self) -> bool {
        let m = self.order as u8;
        (0..m).all(|a| self.add(a, 0) == a && self.add(a, self.neg(a)) == 0)
            && (0..m).all(|a| (0..m).all(|b| self.add(a, b) == self.add(b, a)))
            && (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c)))))
    }
}

fn decode(moduli: &[u8], mut i: usize) -> Vec<u8> {
    let mut c = vec![0u8; moduli.len()];
    for (slot, &d) in c.iter_mut().zip(moduli).rev() {
        *slot = (i % d as usize) as u8;
        i /= d as usize;
    }
    c
}

fn factor(mut m: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    out
}

/// Partitions of `n` into nonincreasing parts, in reverse lexicographic order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One group per isomorphism class of abelian groups of order `m`.
pub fn enumerate_abelian_groups(m: usize) -> Result<Vec<AbelianGroupTable>, ModelError> {
    if m == 0 || m > MAX_ORDER {
        return Err(ModelError::OrderOutOfRange(m));
    }
    let mut choices: Vec<Vec<u8>> = vec![Vec::new()];
    for (p, e) in factor(m) {
        let parts = partitions(e);
        choices = choices
            .iter()
            .flat_map(|prefix| {
                parts.iter().map(move |part| {
                    let mut v = prefix.clone();
                    v.extend(part.iter().map(|&k| p.pow(k) as u8));
                    v
                })
            })
            .collect();
    }
    Ok(choices.into_iter().map(AbelianGroupTable::from_moduli).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=16).map(|m| enumerate_abelian_groups(m).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        assert!(enumerate_abelian_groups(0).is_err());
        assert!(enumerate_abelian_groups(17).is_err());
    }

    #[test]
    fn tables_are_groups() {
        for m in 1..=16 {
            for g in enumerate_abelian_groups(m).unwrap() {
                assert_eq!(g.order, m);
                assert!(g.verify(), "{}", g.label);
            }
        }
    }

    #[test]
    fn labels_and_torsion() {
        let labels: Vec<String> = enumerate_abelian_groups(4).unwrap().into_iter().map(|g| g.label).collect();
        assert_eq!(labels, vec!["Z4", "Z2 x Z2"]);
        let g = AbelianGroupTable::from_moduli(vec![4, 2]);
        assert_eq!(g.torsion(2).len(), 4);
        assert_eq!(g.generator(0), 2);
        assert_eq!(g.generator(1), 1);
        assert_eq!(g.scale(3, g.generator(0)), g.neg(g.generator(0)));
    }
}
