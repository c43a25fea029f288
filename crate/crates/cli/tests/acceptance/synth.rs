//! Random synthetic knowledge bases and a brute-force metric oracle that
//! works on the generator's own records, never on the library's model.

use std::collections::BTreeSet;
use std::fmt::Write;

use rand::rngs::StdRng;
use rand::Rng;

pub const NS: &str = "http://synthetic.example/";

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub classes: usize,
    /// (child, parent), parent index always below child index.
    pub edges: BTreeSet<(usize, usize)>,
    pub properties: usize,
    /// (property, class); `None` as class stands for owl:Thing.
    pub domains: BTreeSet<(usize, Option<usize>)>,
    /// (instance, class)
    pub members: BTreeSet<(usize, usize)>,
    /// Named instances typed only as owl:NamedIndividual.
    pub bare: BTreeSet<usize>,
    pub assertions: BTreeSet<(usize, usize, Obj)>,
    /// Commented classes and properties.
    pub class_comments: BTreeSet<usize>,
    pub property_comments: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Obj {
    Instance(usize),
    Literal(usize),
}

pub fn generate(rng: &mut StdRng) -> Synthetic {
    let classes = rng.gen_range(1..=50);
    let mut edges = BTreeSet::new();
    for child in 1..classes {
        let parents = match rng.gen_range(0..10) {
            0..=2 => 0,
            3..=8 => 1,
            _ => 2,
        };
        for _ in 0..parents {
            edges.insert((child, rng.gen_range(0..child)));
        }
    }
    let properties = rng.gen_range(0..=8);
    let mut domains = BTreeSet::new();
    if rng.gen_bool(0.75) {
        for p in 0..properties {
            for _ in 0..rng.gen_range(0..=2) {
                let d = if rng.gen_bool(0.1) {
                    None
                } else {
                    Some(rng.gen_range(0..classes))
                };
                domains.insert((p, d));
            }
        }
    }
    let instances = rng.gen_range(0..=200);
    let mut members = BTreeSet::new();
    let mut bare = BTreeSet::new();
    let sparse = rng.gen_bool(0.3);
    for i in 0..instances {
        let k = match rng.gen_range(0..20) {
            0..=1 => 0,
            2..=17 => 1,
            18 => 2,
            _ => 3,
        };
        for _ in 0..k {
            // sparse bases crowd their instances into a few classes
            let c = if sparse {
                rng.gen_range(0..classes.min(3))
            } else {
                rng.gen_range(0..classes)
            };
            members.insert((i, c));
        }
        if k == 0 && rng.gen_bool(0.5) {
            bare.insert(i);
        }
    }
    let mut assertions = BTreeSet::new();
    if properties > 0 && instances > 0 {
        for _ in 0..rng.gen_range(0..=400) {
            let s = rng.gen_range(0..instances);
            let p = rng.gen_range(0..properties);
            let o = if rng.gen_bool(0.5) {
                // indexes beyond `instances` are untyped objects
                Obj::Instance(rng.gen_range(0..instances + 10))
            } else {
                Obj::Literal(rng.gen_range(0..20))
            };
            assertions.insert((s, p, o));
        }
    }
    let class_comments = (0..classes).filter(|_| rng.gen_bool(0.1)).collect();
    let property_comments = (0..properties).filter(|_| rng.gen_bool(0.1)).collect();
    Synthetic {
        classes,
        edges,
        properties,
        domains,
        members,
        bare,
        assertions,
        class_comments,
        property_comments,
    }
}

impl Synthetic {
    pub fn to_turtle(&self) -> String {
        let mut t = String::new();
        let _ = writeln!(t, "@prefix : <{NS}> .");
        let _ = writeln!(t, "@prefix owl: <http://www.w3.org/2002/07/owl#> .");
        let _ = writeln!(t, "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .");
        for c in 0..self.classes {
            let _ = writeln!(t, ":C{c} a owl:Class .");
        }
        for (c, d) in &self.edges {
            let _ = writeln!(t, ":C{c} rdfs:subClassOf :C{d} .");
        }
        for p in 0..self.properties {
            let _ = writeln!(t, ":p{p} a owl:ObjectProperty .");
        }
        for (p, d) in &self.domains {
            match d {
                Some(c) => writeln!(t, ":p{p} rdfs:domain :C{c} ."),
                None => writeln!(t, ":p{p} rdfs:domain owl:Thing ."),
            }
            .unwrap();
        }
        for c in &self.class_comments {
            let _ = writeln!(t, ":C{c} rdfs:comment \"class {c}\" .");
        }
        for p in &self.property_comments {
            let _ = writeln!(t, ":p{p} rdfs:comment \"property {p}\" .");
        }
        for (i, c) in &self.members {
            let _ = writeln!(t, ":i{i} a :C{c} .");
        }
        for i in &self.bare {
            let _ = writeln!(t, ":i{i} a owl:NamedIndividual .");
        }
        for (s, p, o) in &self.assertions {
            match o {
                Obj::Instance(o) => writeln!(t, ":i{s} :p{p} :i{o} ."),
                Obj::Literal(v) => writeln!(t, ":i{s} :p{p} \"v{v}\" ."),
            }
            .unwrap();
        }
        t
    }

    pub fn instance_set(&self) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> = self.members.iter().map(|(i, _)| *i).collect();
        out.extend(&self.bare);
        for (s, _, o) in &self.assertions {
            out.insert(*s);
            if let Obj::Instance(o) = o {
                out.insert(*o);
            }
        }
        out
    }

    fn populated(&self, c: usize) -> bool {
        self.members.iter().any(|(_, k)| *k == c)
    }

    fn is_ancestor(&self, a: usize, c: usize) -> bool {
        // depth-first over the edge list
        let mut stack = vec![c];
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            for (ch, p) in &self.edges {
                if *ch == x {
                    if *p == a {
                        return true;
                    }
                    if seen.insert(*p) {
                        stack.push(*p);
                    }
                }
            }
        }
        false
    }

    fn depth(&self) -> Vec<usize> {
        // Bellman-Ford style relaxation from the roots
        let mut d = vec![usize::MAX; self.classes];
        for (c, slot) in d.iter_mut().enumerate() {
            if !self.edges.iter().any(|(ch, _)| *ch == c) {
                *slot = 1;
            }
        }
        for _ in 0..self.classes {
            for (ch, p) in &self.edges {
                if d[*p] != usize::MAX && d[*p] + 1 < d[*ch] {
                    d[*ch] = d[*p] + 1;
                }
            }
        }
        d
    }
}

/// Metric values from first principles; `None` marks an undefined metric.
#[derive(Debug, Clone)]
pub struct Expected {
    pub pc: Option<f64>,
    pub cr: Option<f64>,
    pub p: Option<f64>,
    pub ir: Option<f64>,
    pub rd: Option<f64>,
    pub rr: Option<f64>,
    pub cn: Option<f64>,
    pub sf: Option<f64>,
    pub d: Option<f64>,
}

fn div(a: f64, b: f64) -> Option<f64> {
    if b == 0.0 {
        None
    } else {
        Some(a / b)
    }
}

pub fn oracle(s: &Synthetic) -> Expected {
    let n = s.classes as f64;
    let instances = s.instance_set();
    let populated: Vec<usize> = (0..s.classes).filter(|c| s.populated(*c)).collect();

    let mut used = 0;
    used += usize::from(!s.members.is_empty());
    used += usize::from(!s.assertions.is_empty());
    used += usize::from(!s.edges.is_empty());
    used += usize::from(!s.class_comments.is_empty() || !s.property_comments.is_empty());

    let any_domain = !s.domains.is_empty();
    let mut rr_sum = 0.0;
    let mut rr_n = 0usize;
    for c in 0..s.classes {
        let defined: Vec<usize> = (0..s.properties)
            .filter(|p| {
                if !any_domain {
                    return s.populated(c);
                }
                s.domains.iter().any(|(q, d)| {
                    *q == *p
                        && match d {
                            None => true,
                            Some(d) => *d == c || s.is_ancestor(*d, c),
                        }
                })
            })
            .collect();
        if defined.is_empty() {
            continue;
        }
        let used_props = defined
            .iter()
            .filter(|p| {
                s.assertions
                    .iter()
                    .any(|(x, q, _)| q == *p && s.members.contains(&(*x, c)))
            })
            .count();
        rr_sum += used_props as f64 / defined.len() as f64;
        rr_n += 1;
    }

    let out_total: usize = instances
        .iter()
        .map(|i| s.assertions.iter().filter(|(x, _, _)| x == i).count())
        .sum();

    let with_sibling = populated
        .iter()
        .filter(|c| {
            populated.iter().any(|d| {
                d != *c
                    && s.edges
                        .iter()
                        .any(|(ch, p)| ch == *c && s.edges.contains(&(*d, *p)))
            })
        })
        .count();

    let depth = s.depth();
    Expected {
        pc: Some(used as f64 / 4.0),
        cr: div(populated.len() as f64, n),
        p: div(instances.len() as f64, n),
        ir: div(s.edges.len() as f64, n),
        rd: div(
            s.assertions.len() as f64,
            (s.assertions.len() + s.edges.len()) as f64,
        ),
        rr: div(rr_sum, rr_n as f64),
        cn: div(out_total as f64, instances.len() as f64),
        sf: div(with_sibling as f64, populated.len() as f64),
        d: div(depth.iter().sum::<usize>() as f64, n),
    }
}
