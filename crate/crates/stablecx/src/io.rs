//! JSON fixture formats: rings, modules, complexes, chain maps, experiment
//! configurations, and report serialization. Elements are strings parsed per
//! ring kind ("2", "-1/3", "x+1", "x*y").

use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::module::PresentedModule;
use crate::ring::parse::parse_elem;
use crate::ring::{AlgebraData, BaseField, Matrix, MonomialOrder, Ring};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RingSpec {
    PrimeField { p: u64 },
    Rationals,
    Integers,
    UnivariatePoly {
        field: BaseFieldSpec,
        variable: String,
    },
    QuotientAlgebra {
        field: BaseFieldSpec,
        basis: Vec<String>,
        unit: usize,
        maximal_ideal: Vec<usize>,
        /// table[i][j] is the dense coefficient vector of e_i * e_j.
        table: Vec<Vec<Vec<String>>>,
        #[serde(default)]
        name: Option<String>,
    },
    PolyRing {
        p: u64,
        variables: Vec<String>,
        order: MonomialOrder,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseFieldSpec {
    PrimeField { p: u64 },
    Rationals,
}

impl BaseFieldSpec {
    fn to_base(&self) -> BaseField {
        match self {
            BaseFieldSpec::PrimeField { p } => BaseField::Prime(*p),
            BaseFieldSpec::Rationals => BaseField::Rationals,
        }
    }
    fn of(base: &BaseField) -> BaseFieldSpec {
        match base {
            BaseField::Prime(p) => BaseFieldSpec::PrimeField { p: *p },
            BaseField::Rationals => BaseFieldSpec::Rationals,
        }
    }
}

pub fn build_ring(spec: &RingSpec) -> Result<Arc<Ring>> {
    match spec {
        RingSpec::PrimeField { p } => Ring::prime_field(*p),
        RingSpec::Rationals => Ok(Ring::rationals()),
        RingSpec::Integers => Ok(Ring::integers()),
        RingSpec::UnivariatePoly { field, variable } => {
            Ring::univariate(field.to_base(), variable)
        }
        RingSpec::QuotientAlgebra {
            field,
            basis,
            unit,
            maximal_ideal,
            table,
            name,
        } => {
            let base = field.to_base();
            let dim = basis.len();
            let mut t = vec![vec![vec![base.zero(); dim]; dim]; dim];
            if table.len() != dim {
                return Err(Error::validation("table size mismatch"));
            }
            for (i, row) in table.iter().enumerate() {
                if row.len() != dim {
                    return Err(Error::validation("table row size mismatch"));
                }
                for (j, entry) in row.iter().enumerate() {
                    if entry.len() != dim {
                        return Err(Error::validation("table entry size mismatch"));
                    }
                    for (k, c) in entry.iter().enumerate() {
                        t[i][j][k] = parse_base_field(&base, c)?;
                    }
                }
            }
            let data = AlgebraData {
                base,
                basis: basis.clone(),
                unit: *unit,
                max_ideal: maximal_ideal.clone(),
                table: t,
            };
            let label = name.clone().unwrap_or_else(|| "quotient-algebra".into());
            Ring::quotient_algebra(data, label)
        }
        RingSpec::PolyRing { p, variables, order } => {
            Ring::poly_ring(*p, variables.clone(), *order)
        }
    }
}

fn parse_base_field(base: &BaseField, s: &str) -> Result<crate::ring::FieldElem> {
    let helper = match base {
        BaseField::Prime(p) => Ring::prime_field(*p)?,
        BaseField::Rationals => Ring::rationals(),
    };
    let e = parse_elem(&helper, s)?;
    Ok(match e {
        crate::ring::Elem::Fp(x) => crate::ring::FieldElem::Fp(x),
        crate::ring::Elem::Rat(r) => crate::ring::FieldElem::Rat(r),
        _ => return Err(Error::parse("expected a base field element")),
    })
}

/// Describe an existing ring as a spec (round-trips through build_ring).
pub fn describe_ring(ring: &Ring) -> RingSpec {
    use crate::ring::RingKind;
    match &ring.kind {
        RingKind::PrimeField { p } => RingSpec::PrimeField { p: *p },
        RingKind::Rationals => RingSpec::Rationals,
        RingKind::Integers => RingSpec::Integers,
        RingKind::UnivariatePoly { base, var } => RingSpec::UnivariatePoly {
            field: BaseFieldSpec::of(base),
            variable: var.clone(),
        },
        RingKind::QuotientAlgebra(d) => {
            let bf = match &d.base {
                BaseField::Prime(p) => Ring::prime_field(*p).unwrap(),
                BaseField::Rationals => Ring::rationals(),
            };
            let fmt = |fe: &crate::ring::FieldElem| -> String {
                match fe {
                    crate::ring::FieldElem::Fp(x) => bf.format(&crate::ring::Elem::Fp(*x)),
                    crate::ring::FieldElem::Rat(r) => bf.format(&crate::ring::Elem::Rat(r.clone())),
                }
            };
            RingSpec::QuotientAlgebra {
                field: BaseFieldSpec::of(&d.base),
                basis: d.basis.clone(),
                unit: d.unit,
                maximal_ideal: d.max_ideal.clone(),
                table: d
                    .table
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| e.iter().map(&fmt).collect())
                            .collect()
                    })
                    .collect(),
                name: Some(ring.name.clone()),
            }
        }
        RingKind::PolyRing { p, vars, order } => RingSpec::PolyRing {
            p: *p,
            variables: vars.clone(),
            order: *order,
        },
    }
}

/// Matrices in fixtures are row-major grids of element strings.
pub type MatrixSpec = Vec<Vec<String>>;

pub fn build_matrix(ring: &Arc<Ring>, rows: usize, cols: usize, spec: &MatrixSpec) -> Result<Matrix> {
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(Error::validation(format!(
            "matrix spec must be {rows}x{cols}"
        )));
    }
    let mut m = Matrix::zero(ring.clone(), rows, cols);
    for (i, r) in spec.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m.set(i, j, parse_elem(ring, s)?);
        }
    }
    Ok(m)
}

pub fn describe_matrix(m: &Matrix) -> MatrixSpec {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.ring.format(m.at(i, j))).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub ring: RingSpec,
    pub gens: usize,
    /// Columns of relations: relations[k] is the k-th relation vector.
    pub relations: Vec<Vec<String>>,
}

pub fn build_module(spec: &ModuleSpec) -> Result<(Arc<Ring>, PresentedModule)> {
    let ring = build_ring(&spec.ring)?;
    let cols = spec.relations.len();
    let mut rels = Matrix::zero(ring.clone(), spec.gens, cols);
    for (j, col) in spec.relations.iter().enumerate() {
        if col.len() != spec.gens {
            return Err(Error::validation("relation length must match gens"));
        }
        for (i, s) in col.iter().enumerate() {
            rels.set(i, j, parse_elem(&ring, s)?);
        }
    }
    let m = PresentedModule::new(ring.clone(), spec.gens, rels)?;
    Ok((ring, m))
}

pub fn describe_module(m: &PresentedModule) -> ModuleSpec {
    ModuleSpec {
        ring: describe_ring(&m.ring),
        gens: m.gens,
        relations: (0..m.rels.cols)
            .map(|j| {
                (0..m.gens)
                    .map(|i| m.ring.format(m.rels.at(i, j)))
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowSpec {
    pub lo: i64,
    pub hi: i64,
    pub ranks: Vec<usize>,
    /// d[k] maps degree lo+k to lo+k+1; length = hi - lo.
    pub d: Vec<MatrixSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailSpec {
    pub period: usize,
    /// Ranks for the `period` degrees adjacent to the window, ascending.
    pub ranks: Vec<usize>,
    /// Differentials for those degrees (the last one crosses the seam on a
    /// left tail; the first one leaves the window on a right tail).
    pub d: Vec<MatrixSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub ring: RingSpec,
    pub window: WindowSpec,
    #[serde(default)]
    pub left_tail: Option<TailSpec>,
    #[serde(default)]
    pub right_tail: Option<TailSpec>,
}

pub fn build_complex(spec: &ComplexSpec) -> Result<(Arc<Ring>, Complex)> {
    let ring = build_ring(&spec.ring)?;
    let w = &spec.window;
    if w.hi < w.lo || w.ranks.len() != (w.hi - w.lo + 1) as usize {
        return Err(Error::validation("window ranks must cover lo..=hi"));
    }
    let mut lo = w.lo;
    let mut ranks = w.ranks.clone();
    let mut diffs: Vec<Matrix> = vec![];
    for (k, d) in w.d.iter().enumerate() {
        diffs.push(build_matrix(&ring, w.ranks[k + 1], w.ranks[k], d)?);
    }
    let mut left_period = None;
    let mut right_period = None;
    if let Some(t) = &spec.left_tail {
        if t.ranks.len() != t.period || t.d.len() != t.period {
            return Err(Error::validation("left tail needs period ranks and diffs"));
        }
        let mut new_ranks = t.ranks.clone();
        new_ranks.extend(ranks);
        let mut new_diffs = vec![];
        for (k, d) in t.d.iter().enumerate() {
            let src = t.ranks[k];
            let tgt = if k + 1 < t.period { t.ranks[k + 1] } else { w.ranks[0] };
            new_diffs.push(build_matrix(&ring, tgt, src, d)?);
        }
        new_diffs.extend(diffs);
        ranks = new_ranks;
        diffs = new_diffs;
        lo -= t.period as i64;
        left_period = Some(t.period);
    }
    if let Some(t) = &spec.right_tail {
        if t.ranks.len() != t.period || t.d.len() != t.period {
            return Err(Error::validation("right tail needs period ranks and diffs"));
        }
        // the first tail differential leaves the window
        let mut srcs = vec![*ranks.last().unwrap()];
        srcs.extend(t.ranks.iter().take(t.period - 1));
        for (k, d) in t.d.iter().enumerate() {
            let src = srcs[k];
            let tgt = t.ranks[k];
            diffs.push(build_matrix(&ring, tgt, src, d)?);
        }
        ranks.extend(t.ranks.clone());
        right_period = Some(t.period);
    }
    let c = Complex::new(ring.clone(), lo, ranks, diffs, left_period, right_period)?;
    Ok((ring, c))
}

pub fn describe_complex(c: &Complex) -> ComplexSpec {
    // tails are emitted by re-slicing through the periodic accessors; the
    // central window is widened when the stored data is mostly tail
    let lp = c.left_period.unwrap_or(0);
    let rp = c.right_period.unwrap_or(0);
    let lo = c.lo + lp as i64;
    let hi = (c.hi() - rp as i64).max(lo);
    let window = WindowSpec {
        lo,
        hi,
        ranks: (lo..=hi).map(|d| c.rank(d)).collect(),
        d: (lo..hi).map(|d| describe_matrix(&c.diff(d))).collect(),
    };
    let left_tail = c.left_period.map(|p| TailSpec {
        period: p,
        ranks: (lo - p as i64..lo).map(|d| c.rank(d)).collect(),
        d: (lo - p as i64..lo)
            .map(|d| describe_matrix(&c.diff(d)))
            .collect(),
    });
    let right_tail = c.right_period.map(|q| TailSpec {
        period: q,
        ranks: (hi + 1..=hi + q as i64).map(|d| c.rank(d)).collect(),
        d: (hi..hi + q as i64)
            .map(|d| describe_matrix(&c.diff(d)))
            .collect(),
    });
    ComplexSpec {
        ring: describe_ring(&c.ring),
        window,
        left_tail,
        right_tail,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainMapSpec {
    pub ring: RingSpec,
    pub source: ComplexSpec,
    pub target: ComplexSpec,
    #[serde(default)]
    pub degree: i64,
    pub lo: i64,
    pub components: Vec<MatrixSpec>,
}

pub fn build_chain_map(spec: &ChainMapSpec) -> Result<ChainMap> {
    let (ring, source) = build_complex(&spec.source)?;
    let (_, target) = build_complex(&spec.target)?;
    let mut comps = vec![];
    for (k, m) in spec.components.iter().enumerate() {
        let d = spec.lo + k as i64;
        comps.push(build_matrix(
            &ring,
            target.rank(d + spec.degree),
            source.rank(d),
            m,
        )?);
    }
    ChainMap::new(source, target, spec.degree, spec.lo, comps, None, None)
}

pub fn describe_chain_map(f: &ChainMap) -> ChainMapSpec {
    ChainMapSpec {
        ring: describe_ring(&f.source.ring),
        source: describe_complex(&f.source),
        target: describe_complex(&f.target),
        degree: f.degree,
        lo: f.lo,
        components: f.comps.iter().map(describe_matrix).collect(),
    }
}

/// Resolution fixture: an ordered list of triangle records carrying the q/p/w
/// components; the complexes are referenced inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub q: ChainMapSpec,
    pub p: ChainMapSpec,
    pub omega: ChainMapSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolutionSpec {
    pub steps: Vec<TriangleRecord>,
}

pub fn build_resolution_fixture(
    spec: &ResolutionSpec,
    margin: usize,
) -> Result<crate::contraction::PartialResolution> {
    use crate::complex::cone::Triangle;
    let mut steps = vec![];
    for rec in &spec.steps {
        let q = build_chain_map(&rec.q)?;
        let p = build_chain_map(&rec.p)?;
        let w = build_chain_map(&rec.omega)?;
        let t = Triangle::from_maps_with_c(&q, &p, &w)?;
        steps.push(t);
    }
    crate::contraction::resolution_from_triangles(steps, margin)
}
