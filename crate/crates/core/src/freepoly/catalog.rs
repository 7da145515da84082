use std::sync::OnceLock;

use serde::Serialize;

use super::{parse, FreePoly};

/// Where an identity is expected to hold.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Applicability {
    /// Characteristics for which the identity is not claimed.
    pub excluded_characteristics: Vec<u64>,
    /// Only claimed for commutative algebras.
    pub commutative_only: bool,
    pub note: Option<&'static str>,
}

#[derive(Clone, Debug)]
pub struct IdentityEntry {
    pub name: &'static str,
    pub degree: usize,
    pub poly: FreePoly,
    pub applicability: Applicability,
}

impl IdentityEntry {
    /// Whether the identity is claimed in characteristic `p` (0 for Q).
    pub fn applies_in_characteristic(&self, p: u64) -> bool {
        !self.applicability.excluded_characteristics.contains(&p)
    }
}

struct Raw {
    name: &'static str,
    vars: &'static [&'static str],
    expr: &'static str,
    excluded: &'static [u64],
    commutative_only: bool,
    note: Option<&'static str>,
}

const ABCD: &[&str] = &["a", "b", "c", "d"];
const ABC: &[&str] = &["a", "b", "c"];
const T4: &[&str] = &["t1", "t2", "t3", "t4"];
const ABCX: &[&str] = &["a", "b", "c", "x"];
const ABCXY: &[&str] = &["a", "b", "c", "x", "y"];

const fn raw(name: &'static str, vars: &'static [&'static str], expr: &'static str) -> Raw {
    Raw {
        name,
        vars,
        expr,
        excluded: &[],
        commutative_only: false,
        note: None,
    }
}

const fn comm_only(name: &'static str, vars: &'static [&'static str], expr: &'static str) -> Raw {
    Raw {
        name,
        vars,
        expr,
        excluded: &[],
        commutative_only: true,
        note: None,
    }
}

const RAW: &[Raw] = &[
    raw(
        "tortken",
        ABCD,
        "(a*b)*(c*d) - (a*d)*(c*b) - assoc(a,b,c)*d + assoc(a,d,c)*b",
    ),
    raw(
        "tortken_left",
        ABCD,
        "(a*b)*(c*d) - (c*b)*(a*d) + a*assoc(b,c,d) - c*assoc(b,a,d)",
    ),
    raw("right_symmetric", ABC, "assoc(a,b,c) - assoc(a,c,b)"),
    raw("left_commutative", ABC, "a*(b*c) - b*(a*c)"),
    raw("leibniz_dual_left", ABC, "(a*b)*c - a*(b*c) - a*(c*b)"),
    raw("right_commutative", ABC, "(a*b)*c - (a*c)*b"),
    raw("leibniz_left", ABC, "(a*b)*c - a*(b*c) + b*(a*c)"),
    raw("leibniz_right", ABC, "a*(b*c) - (a*b)*c + (a*c)*b"),
    raw("commutativity", &["a", "b"], "a*b - b*a"),
    raw("anticommutativity", &["a", "b"], "a*b + b*a"),
    raw("jacobi", ABC, "a*(b*c) + b*(c*a) + c*(a*b)"),
    comm_only(
        "assoc_jordan_deg4",
        ABCD,
        "(a*b)*(c*d) + (a*c)*(d*b) + (a*d)*(b*c) - ((b*c)*a)*d - ((c*d)*a)*b - ((d*b)*a)*c",
    ),
    comm_only("gametic_jordan", &["x", "y"], "((x*x)*y)*x - (x*x)*(y*x)"),
    raw("right_unit_law", ABC, "a*(b*c) + a*(c*b) - 2*(a*b)*c"),
    comm_only(
        "alt_right_mult",
        &["x", "a", "b", "c"],
        "((x*a)*b)*c + ((x*b)*c)*a + ((x*c)*a)*b - ((x*a)*c)*b - ((x*b)*a)*c - ((x*c)*b)*a",
    ),
    comm_only(
        "cor_on",
        ABCX,
        "assoc(a,b*x,c) + assoc(b,c*x,a) + assoc(c,a*x,b)",
    ),
    comm_only(
        "cor_onon",
        ABCX,
        "assoc(a,x,b)*c + assoc(b,x,c)*a + assoc(c,x,a)*b",
    ),
    Raw {
        name: "tortken_prime",
        vars: T4,
        expr: "(t1*t3)*(t2*t4) + (t1*t4)*(t2*t3) + ((t1*t3)*t4)*t2 + ((t1*t4)*t2)*t3 \
               + ((t2*t3)*t1)*t4 + ((t2*t4)*t3)*t1",
        excluded: &[],
        commutative_only: true,
        note: Some("claimed only for D(ab) on the divided power algebra with (p,m) = (3,1)"),
    },
    comm_only(
        "f1",
        T4,
        "-((t1*t2)*t3)*t4 + ((t1*t2)*t4)*t3 + ((t1*t3)*t2)*t4 - ((t1*t3)*t4)*t2 \
         - ((t1*t4)*t2)*t3 + ((t1*t4)*t3)*t2",
    ),
    comm_only(
        "f2",
        T4,
        "(t1*t3)*(t2*t4) - (t1*t4)*(t2*t3) - assoc(t1,t3,t2)*t4 + assoc(t1,t4,t2)*t3",
    ),
    comm_only(
        "f3",
        T4,
        "(t1*t3)*(t2*t4) - (t1*t4)*(t2*t3) - ((t1*t2)*t3)*t4 + ((t1*t2)*t4)*t3 \
         + ((t1*t3)*t2)*t4 - ((t1*t4)*t2)*t3 - ((t2*t3)*t4)*t1 + ((t2*t4)*t3)*t1",
    ),
    comm_only(
        "f4",
        T4,
        "(t1*t2)*(t3*t4) - (t1*t4)*(t2*t3) + ((t1*t2)*t4)*t3 + ((t1*t3)*t2)*t4 \
         - ((t1*t3)*t4)*t2 - ((t1*t4)*t2)*t3 - ((t2*t3)*t1)*t4 + ((t3*t4)*t1)*t2",
    ),
    comm_only(
        "f5",
        T4,
        "(t1*t2)*(t3*t4) - (t1*t4)*(t2*t3) + ((t1*t2)*t4)*t3 - ((t1*t4)*t2)*t3 \
         - ((t2*t3)*t4)*t1 + ((t3*t4)*t2)*t1",
    ),
    comm_only(
        "deg5_i",
        ABCXY,
        "assoc(a,y,b)*(x*c) + assoc(b,y,c)*(x*a) + assoc(c,y,a)*(x*b) \
         - (a*y)*assoc(b,x,c) - (b*y)*assoc(c,x,a) - (c*y)*assoc(a,x,b)",
    ),
    Raw {
        name: "deg5_ii",
        vars: ABCXY,
        expr: "((x*a)*(y*b) - (x*b)*(y*a))*c + ((x*b)*(y*c) - (x*c)*(y*b))*a \
               + ((x*c)*(y*a) - (x*a)*(y*c))*b",
        excluded: &[3],
        commutative_only: true,
        note: None,
    },
    comm_only(
        "deg5_iii",
        ABCXY,
        "assoc(x,y*a,b)*c + assoc(x,y*b,c)*a + assoc(x,y*c,a)*b \
         - assoc(x,y*b,a)*c - assoc(x,y*c,b)*a - assoc(x,y*a,c)*b",
    ),
    comm_only(
        "deg5_iv",
        ABCXY,
        "(((x*a)*b)*c)*y + (((x*b)*c)*a)*y + (((x*c)*a)*b)*y \
         - (((x*b)*a)*c)*y - (((x*c)*b)*a)*y - (((x*a)*c)*b)*y",
    ),
    Raw {
        name: "cor_7november",
        vars: ABCXY,
        expr: "assoc(a,assoc(b,x,c),y) + assoc(b,assoc(c,x,a),y) + assoc(c,assoc(a,x,b),y) \
               - assoc(a,assoc(b,y,c),x) - assoc(b,assoc(c,y,a),x) - assoc(c,assoc(a,y,b),x)",
        excluded: &[3],
        commutative_only: true,
        note: None,
    },
    Raw {
        name: "sokolov",
        vars: ABCD,
        expr: "assoc(a*b,c,d) - assoc(a*b,d,c) - a*(assoc(b,c,d) - assoc(b,d,c)) \
               - (assoc(a,c,d) - assoc(a,d,c))*b",
        excluded: &[],
        commutative_only: false,
        note: Some("fails on the Jordan-Osborn algebras; kept as a negative example"),
    },
];

/// The built-in identities, fully expanded.
pub fn catalog() -> &'static [IdentityEntry] {
    static CATALOG: OnceLock<Vec<IdentityEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RAW.iter()
            .map(|r| {
                let poly = parse(r.expr, r.vars)
                    .unwrap_or_else(|e| panic!("catalog entry {} does not parse: {e}", r.name));
                IdentityEntry {
                    name: r.name,
                    degree: poly.degree(),
                    poly,
                    applicability: Applicability {
                        excluded_characteristics: r.excluded.to_vec(),
                        commutative_only: r.commutative_only,
                        note: r.note,
                    },
                }
            })
            .collect()
    })
}

pub fn lookup(name: &str) -> Option<&'static IdentityEntry> {
    catalog().iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn names_unique_and_homogeneous() {
        let mut seen = HashSet::new();
        for e in catalog() {
            assert!(seen.insert(e.name), "duplicate {}", e.name);
            assert!(!e.poly.is_zero(), "{} is zero", e.name);
            for (m, _) in e.poly.terms() {
                assert_eq!(m.degree(), e.degree, "{}", e.name);
            }
        }
    }

    #[test]
    fn spot_checks() {
        assert_eq!(lookup("commutativity").unwrap().poly.to_string(), "a*b - b*a");
        let t = lookup("tortken").unwrap();
        assert_eq!((t.degree, t.poly.num_terms()), (4, 6));
        let iv = lookup("deg5_iv").unwrap();
        assert_eq!(iv.poly.num_terms(), 6);
        for (m, _) in iv.poly.terms() {
            assert_eq!(m.shape().format_compact(&["x".into()]), "(((xx)x)x)x");
        }
        assert!(lookup("deg5_ii").unwrap().poly.is_multilinear());
        assert!(!lookup("deg5_ii").unwrap().applies_in_characteristic(3));
        assert!(!lookup("gametic_jordan").unwrap().poly.is_multilinear());
    }

    #[test]
    fn f2_is_renamed_tortken() {
        let t = &lookup("tortken").unwrap().poly;
        let names: Vec<String> = T4.iter().map(|s| s.to_string()).collect();
        let renamed = t.substitute_vars(&[0, 2, 1, 3], names);
        assert_eq!(renamed, lookup("f2").unwrap().poly);
    }
}
