use std::cmp::Ordering;
use std::fmt::Write;

/// A nonassociative word: a binary product tree whose leaves are variable
/// positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Var(usize),
    Mul(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn var(i: usize) -> Monomial {
        Monomial::Var(i)
    }

    pub fn mul(left: Monomial, right: Monomial) -> Monomial {
        Monomial::Mul(Box::new(left), Box::new(right))
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Monomial::Var(_) => 1,
            Monomial::Mul(l, r) => l.degree() + r.degree(),
        }
    }

    /// Leaf variables from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Monomial::Var(v) => out.push(*v),
            Monomial::Mul(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    /// Occurrences of each variable, for `nvars` variables.
    pub fn var_counts(&self, nvars: usize) -> Vec<usize> {
        let mut counts = vec![0; nvars];
        for v in self.leaves() {
            counts[v] += 1;
        }
        counts
    }

    /// Replaces each leaf `v` by `f(v)`.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> Monomial {
        match self {
            Monomial::Var(v) => Monomial::Var(f(*v)),
            Monomial::Mul(l, r) => Monomial::mul(l.map_vars(f), r.map_vars(f)),
        }
    }

    /// Replaces the leaves, in left-to-right order, by `vars`.
    pub fn with_leaves(&self, vars: &[usize]) -> Monomial {
        let mut it = vars.iter().copied();
        let out = self.relabel_in_order(&mut it);
        debug_assert!(it.next().is_none());
        out
    }

    fn relabel_in_order(&self, it: &mut impl Iterator<Item = usize>) -> Monomial {
        match self {
            Monomial::Var(_) => Monomial::Var(it.next().expect("enough leaves")),
            Monomial::Mul(l, r) => {
                let l = l.relabel_in_order(it);
                let r = r.relabel_in_order(it);
                Monomial::mul(l, r)
            }
        }
    }

    /// Tree shape with every leaf set to variable 0.
    pub fn shape(&self) -> Monomial {
        self.map_vars(&|_| 0)
    }

    /// Order used to pick commutative representatives: higher degree first,
    /// then leaves before products, then structural comparison.
    pub fn commutative_cmp(&self, other: &Monomial) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| match (self, other) {
            (Monomial::Var(a), Monomial::Var(b)) => a.cmp(b),
            (Monomial::Var(_), Monomial::Mul(..)) => Ordering::Less,
            (Monomial::Mul(..), Monomial::Var(_)) => Ordering::Greater,
            (Monomial::Mul(a, b), Monomial::Mul(c, d)) => {
                a.commutative_cmp(c).then_with(|| b.commutative_cmp(d))
            }
        })
    }

    /// Representative of the orbit under swapping the factors of any
    /// product node: children canonicalized, then ordered by
    /// [`Monomial::commutative_cmp`]. `((t1 t2) t3) t4` and
    /// `(t1 t2)(t3 t4)` are already canonical.
    pub fn canonical_commutative(&self) -> Monomial {
        match self {
            Monomial::Var(_) => self.clone(),
            Monomial::Mul(l, r) => {
                let l = l.canonical_commutative();
                let r = r.canonical_commutative();
                if r.commutative_cmp(&l) == Ordering::Less {
                    Monomial::mul(r, l)
                } else {
                    Monomial::mul(l, r)
                }
            }
        }
    }

    /// Text form with variable names; the outermost product is not
    /// parenthesized.
    pub fn format(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write_into(names, &mut s, true);
        s
    }

    fn write_into(&self, names: &[String], out: &mut String, top: bool) {
        match self {
            Monomial::Var(v) => out.push_str(&names[*v]),
            Monomial::Mul(l, r) => {
                if !top {
                    out.push('(');
                }
                l.write_into(names, out, false);
                out.push('*');
                r.write_into(names, out, false);
                if !top {
                    out.push(')');
                }
            }
        }
    }

    /// Compact form used in tables: juxtaposition, e.g. `((t1t2)t3)t4`.
    pub fn format_compact(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.write_compact(names, &mut s, true);
        s
    }

    fn write_compact(&self, names: &[String], out: &mut String, top: bool) {
        match self {
            Monomial::Var(v) => {
                let _ = write!(out, "{}", names[*v]);
            }
            Monomial::Mul(l, r) => {
                if !top {
                    out.push('(');
                }
                l.write_compact(names, out, false);
                r.write_compact(names, out, false);
                if !top {
                    out.push(')');
                }
            }
        }
    }

    /// Every sub-product, including `self`, in post-order.
    pub fn subtrees(&self) -> Vec<&Monomial> {
        let mut out = Vec::new();
        self.collect_subtrees(&mut out);
        out
    }

    fn collect_subtrees<'a>(&'a self, out: &mut Vec<&'a Monomial>) {
        if let Monomial::Mul(l, r) = self {
            l.collect_subtrees(out);
            r.collect_subtrees(out);
        }
        out.push(self);
    }
}
