//! Property checking of lattice identities over relations.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kernel::{generalized_union, leq_by_join, natural_join};
use crate::relation::{Header, Relation};
use crate::value::{Attr, Value};

/// An identity between two relational expressions over one to three
/// operands `a`, `b`, `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    JoinIdempotent,
    UnionIdempotent,
    JoinCommutative,
    UnionCommutative,
    JoinAssociative,
    UnionAssociative,
    /// `a ⋈ (a ∪̄ b) = a`
    JoinAbsorption,
    /// `a ∪̄ (a ⋈ b) = a`
    UnionAbsorption,
    /// `a ⋈ (b ∪̄ c) = (a ⋈ b) ∪̄ (a ⋈ c)`
    JoinOverUnion,
    /// `a ∪̄ (b ⋈ c) = (a ∪̄ b) ⋈ (a ∪̄ c)`
    UnionOverJoin,
    /// `a ≤ c ⟹ a ⋈ (b ∪̄ c) = (a ⋈ b) ∪̄ c`
    Modular,
}

impl Law {
    /// The eight identities every lattice satisfies.
    pub const LATTICE: [Law; 8] = [
        Law::JoinIdempotent,
        Law::UnionIdempotent,
        Law::JoinCommutative,
        Law::UnionCommutative,
        Law::JoinAssociative,
        Law::UnionAssociative,
        Law::JoinAbsorption,
        Law::UnionAbsorption,
    ];

    pub const ALL: [Law; 11] = [
        Law::JoinIdempotent,
        Law::UnionIdempotent,
        Law::JoinCommutative,
        Law::UnionCommutative,
        Law::JoinAssociative,
        Law::UnionAssociative,
        Law::JoinAbsorption,
        Law::UnionAbsorption,
        Law::JoinOverUnion,
        Law::UnionOverJoin,
        Law::Modular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::JoinIdempotent => "join-idempotent",
            Law::UnionIdempotent => "union-idempotent",
            Law::JoinCommutative => "join-commutative",
            Law::UnionCommutative => "union-commutative",
            Law::JoinAssociative => "join-associative",
            Law::UnionAssociative => "union-associative",
            Law::JoinAbsorption => "join-absorption",
            Law::UnionAbsorption => "union-absorption",
            Law::JoinOverUnion => "join-distributes-over-union",
            Law::UnionOverJoin => "union-distributes-over-join",
            Law::Modular => "modular",
        }
    }

    pub fn from_name(name: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name() == name)
    }

    pub fn formula(self) -> &'static str {
        match self {
            Law::JoinIdempotent => "A & A = A",
            Law::UnionIdempotent => "A | A = A",
            Law::JoinCommutative => "A & B = B & A",
            Law::UnionCommutative => "A | B = B | A",
            Law::JoinAssociative => "A & (B & C) = (A & B) & C",
            Law::UnionAssociative => "A | (B | C) = (A | B) | C",
            Law::JoinAbsorption => "A & (A | B) = A",
            Law::UnionAbsorption => "A | (A & B) = A",
            Law::JoinOverUnion => "A & (B | C) = (A & B) | (A & C)",
            Law::UnionOverJoin => "A | (B & C) = (A | B) & (A | C)",
            Law::Modular => "A <= C implies A & (B | C) = (A & B) | C",
        }
    }

    /// Whether the law constrains these operands at all.
    pub fn premise(self, ops: &[Relation; 3]) -> bool {
        match self {
            Law::Modular => leq_by_join(&ops[0], &ops[2]),
            _ => true,
        }
    }

    /// Evaluates both sides on `[a, b, c]`; operands the law does not
    /// mention are ignored.
    pub fn sides(self, ops: &[Relation; 3]) -> (Relation, Relation) {
        let [a, b, c] = ops;
        let j = natural_join;
        let u = generalized_union;
        match self {
            Law::JoinIdempotent => (j(a, a), a.clone()),
            Law::UnionIdempotent => (u(a, a), a.clone()),
            Law::JoinCommutative => (j(a, b), j(b, a)),
            Law::UnionCommutative => (u(a, b), u(b, a)),
            Law::JoinAssociative => (j(a, &j(b, c)), j(&j(a, b), c)),
            Law::UnionAssociative => (u(a, &u(b, c)), u(&u(a, b), c)),
            Law::JoinAbsorption => (j(a, &u(a, b)), a.clone()),
            Law::UnionAbsorption => (u(a, &j(a, b)), a.clone()),
            Law::JoinOverUnion => (j(a, &u(b, c)), u(&j(a, b), &j(a, c))),
            Law::UnionOverJoin => (u(a, &j(b, c)), j(&u(a, b), &u(a, c))),
            Law::Modular => (j(a, &u(b, c)), u(&j(a, b), c)),
        }
    }

    /// True when the premise fails or both sides agree.
    pub fn holds_on(self, ops: &[Relation; 3]) -> bool {
        if !self.premise(ops) {
            return true;
        }
        let (lhs, rhs) = self.sides(ops);
        lhs == rhs
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Operands together with both evaluated sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub operands: Vec<Relation>,
    pub lhs: Relation,
    pub rhs: Relation,
}

/// Outcome of checking one law.
///
/// A report that does not hold always carries a witness whose sides differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub cases: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl LawReport {
    fn single(law: Law, ops: &[Relation; 3], arity: usize) -> LawReport {
        let (lhs, rhs) = law.sides(ops);
        let mut notes = Vec::new();
        let holds = if law.premise(ops) {
            lhs == rhs
        } else {
            notes.push("premise does not hold; law is vacuously true".to_string());
            true
        };
        LawReport {
            law: law.name().to_string(),
            cases: 1,
            holds,
            witness: Some(Witness {
                operands: ops[..arity].to_vec(),
                lhs,
                rhs,
            }),
            notes,
        }
    }
}

/// A source of relations for property checking.
pub trait Sampler {
    fn sample(&mut self) -> Relation;
}

impl<F: FnMut() -> Relation> Sampler for F {
    fn sample(&mut self) -> Relation {
        self()
    }
}

/// Seeded generator of small random relations: headers are random subsets
/// of `{w, x, y, z}`, bodies hold 0–6 rows of integers 0–4.
pub struct RandomRelations {
    rng: ChaCha8Rng,
    pool: Vec<Attr>,
}

impl RandomRelations {
    pub const POOL: [&'static str; 4] = ["w", "x", "y", "z"];
    pub const MAX_ROWS: usize = 6;
    pub const MAX_VALUE: i64 = 4;

    pub fn new(seed: u64) -> Self {
        RandomRelations {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: Self::POOL.iter().map(|n| crate::value::attr(n)).collect(),
        }
    }

    /// A random relation over exactly `header`.
    pub fn over(&mut self, header: &Header) -> Relation {
        let attrs: Vec<Attr> = header.iter().cloned().collect();
        let rows = self.rng.gen_range(0..=Self::MAX_ROWS);
        let body: Vec<Vec<Value>> = (0..rows)
            .map(|_| {
                attrs
                    .iter()
                    .map(|_| Value::Int(self.rng.gen_range(0..=Self::MAX_VALUE)))
                    .collect()
            })
            .collect();
        Relation::from_positional(&attrs, body).expect("distinct pool attributes")
    }

    pub fn header(&mut self) -> Header {
        let pool = self.pool.clone();
        pool.into_iter().filter(|_| self.rng.gen_bool(0.5)).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

impl Sampler for RandomRelations {
    fn sample(&mut self) -> Relation {
        let header = self.header();
        self.over(&header)
    }
}

/// Checks the eight lattice identities on `cases` sampled triples, one
/// report per identity. The first failing triple of each law is kept.
pub fn check_laws(sampler: &mut impl Sampler, cases: usize) -> Vec<LawReport> {
    let mut reports: Vec<LawReport> = Law::LATTICE
        .iter()
        .map(|law| LawReport {
            law: law.name().to_string(),
            cases: 0,
            holds: true,
            witness: None,
            notes: Vec::new(),
        })
        .collect();
    for _ in 0..cases.max(1) {
        let ops = [sampler.sample(), sampler.sample(), sampler.sample()];
        for (law, report) in Law::LATTICE.iter().zip(reports.iter_mut()) {
            report.cases += 1;
            if !report.holds {
                continue;
            }
            let (lhs, rhs) = law.sides(&ops);
            if lhs != rhs {
                report.holds = false;
                report.witness = Some(Witness {
                    operands: ops.to_vec(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    reports
}

/// Evaluates both distributive laws on one triple, join-over-union first.
/// Both reports carry their evaluated sides.
pub fn check_distributivity(a: &Relation, b: &Relation, c: &Relation) -> (LawReport, LawReport) {
    let ops = [a.clone(), b.clone(), c.clone()];
    (
        LawReport::single(Law::JoinOverUnion, &ops, 3),
        LawReport::single(Law::UnionOverJoin, &ops, 3),
    )
}

/// Evaluates the modular law on one triple. When `a ≤ c` fails the law
/// holds vacuously and the report says so in its notes.
pub fn check_modularity(a: &Relation, b: &Relation, c: &Relation) -> LawReport {
    LawReport::single(Law::Modular, &[a.clone(), b.clone(), c.clone()], 3)
}
