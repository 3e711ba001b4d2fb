//! Flatness of `A(M)`: the rank-3 criterion, the determinant obstruction for
//! finite rank-3 parabolics, and bounded searches for evidence of
//! non-flatness (strategy dependence of normal forms, non-associativity).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, DeformedAlgebra, Strategy};
use crate::coxeter::{rank3_is_finite, CoxeterMatrix, Word};
use crate::cyclotomic::{CyclotomicField, CyclotomicValue};
use crate::group::{CoxeterGroup, Side};
use crate::laurent::{LaurentPoly, ParamIndex};
use crate::ring::{GenericPoint, TwistedPair};
use crate::{BigInt, Budget, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatnessReport {
    pub flat: bool,
    pub offending_triples: Vec<[usize; 3]>,
    pub obstructions: Vec<ObstructionRelation>,
}

/// One factor `(∏_k t_ijk)^{sign · exponent}` of a determinant relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionFactor {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    /// `D / m_ij`.
    pub exponent: u64,
    /// `-1` for the pair traversed against index order in `a_ab a_bc a_ca`.
    pub sign: i8,
}

/// `det(a_ab) det(a_bc) det(a_ca) = 1` in a free module of rank `D`, for a
/// triple `a < b < c`: `a_ij` has eigenvalues `t_ijk`, each of multiplicity
/// `D / m_ij`, and `a_ca = a_ac^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionRelation {
    pub triple: [usize; 3],
    /// `|W₊|` of the parabolic subgroup on the triple.
    pub d: u64,
    pub factors: Vec<ObstructionFactor>,
}

impl ObstructionRelation {
    /// The monomial whose value must be 1.
    pub fn monomial(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for f in &self.factors {
            for k in 1..=f.m {
                let t = LaurentPoly::var(ParamIndex {
                    i: f.i as u8,
                    j: f.j as u8,
                    m: f.m,
                    k,
                });
                let t = if f.sign < 0 { t.invert_unit().expect("variable") } else { t };
                acc = acc.mul(&t.pow(f.exponent as u32));
            }
        }
        acc
    }

    /// Value at the group specialization, in `Q(ζ_N)`.
    pub fn at_group_point(&self) -> Result<CyclotomicValue> {
        let n = self.factors.iter().fold(1u32, |acc, f| {
            num_integer::Integer::lcm(&acc, &f.m)
        });
        self.monomial().specialize_group(&CyclotomicField::new(n))
    }

    pub fn at_point(&self, point: &GenericPoint) -> Result<BigRational> {
        point.eval(&self.monomial())
    }

    /// Coefficients of the linearization at the group point: with
    /// `t_ijk = ζ^k e^{τ_ijk}` the relation reads `exp(Σ c_ijk τ_ijk) = 1`.
    pub fn first_order(&self) -> BTreeMap<ParamIndex, BigInt> {
        let mut out = BTreeMap::new();
        for f in &self.factors {
            for k in 1..=f.m {
                let p = ParamIndex {
                    i: f.i as u8,
                    j: f.j as u8,
                    m: f.m,
                    k,
                };
                out.insert(p, BigInt::from(f.exponent) * BigInt::from(f.sign));
            }
        }
        out
    }
}

/// All 3-subsets of the index set generating a finite parabolic subgroup.
pub fn finite_triples(matrix: &CoxeterMatrix) -> Vec<[usize; 3]> {
    let r = matrix.rank();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                if rank3_is_finite(matrix.order(a, b), matrix.order(a, c), matrix.order(b, c)) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `A(M)` is flat exactly when no three generators span a finite subgroup.
pub fn is_flat(matrix: &CoxeterMatrix) -> Result<FlatnessReport> {
    let offending_triples = finite_triples(matrix);
    let obstructions = offending_triples
        .iter()
        .map(|t| determinant_obstruction(matrix, *t))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlatnessReport {
        flat: offending_triples.is_empty(),
        offending_triples,
        obstructions,
    })
}

/// The determinant relation for a finite triple, with `D` obtained by
/// enumerating the parabolic subgroup.
pub fn determinant_obstruction(matrix: &CoxeterMatrix, triple: [usize; 3]) -> Result<ObstructionRelation> {
    let [a, b, c] = triple;
    if !(a < b && b < c && c < matrix.rank()) {
        return Err(Error::InvalidInput("triple must be increasing and in range".into()));
    }
    let (mab, mac, mbc) = (matrix.order(a, b), matrix.order(a, c), matrix.order(b, c));
    if !rank3_is_finite(mab, mac, mbc) {
        return Err(Error::InfiniteTriple);
    }
    let parabolic = matrix.parabolic(&triple)?;
    let mut group = CoxeterGroup::new(parabolic.matrix);
    let size: usize = group.enumerate_all()?.iter().map(Vec::len).sum();
    let d = (size / 2) as u64;
    let mut factors = Vec::with_capacity(3);
    for (i, j, sign) in [(a, b, 1i8), (b, c, 1), (a, c, -1)] {
        let m = matrix.order(i, j).finite().ok_or(Error::InfiniteTriple)?;
        if d % u64::from(m) != 0 {
            return Err(Error::InvalidInput(alloc::format!(
                "m = {m} does not divide D = {d}"
            )));
        }
        factors.push(ObstructionFactor {
            i,
            j,
            m,
            exponent: d / u64::from(m),
            sign,
        });
    }
    Ok(ObstructionRelation { triple, d, factors })
}

/// Evidence that the spanning set is not a basis at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Two reduction strategies disagree on a word.
    Strategy {
        word: Word,
        reference: Strategy,
        other: Strategy,
        reference_value: AlgebraElement<TwistedPair>,
        other_value: AlgebraElement<TwistedPair>,
    },
    /// `(T_x T_y) T_z ≠ T_x (T_y T_z)`.
    Associativity {
        triple: [Word; 3],
        left: AlgebraElement<TwistedPair>,
        right: AlgebraElement<TwistedPair>,
    },
}

/// What to test and how much of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfluenceConfig {
    /// Every word of length `≤ exhaustive_len` is compared across strategies.
    pub exhaustive_len: usize,
    pub random_words: usize,
    pub random_len: usize,
    pub triples: usize,
    /// Length bound for each word of an associativity triple.
    pub triple_len: usize,
    pub seed: u64,
    pub stop_at_first: bool,
    pub words: WordSet,
}

/// Which words of length `≤ exhaustive_len` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordSet {
    All,
    /// Reduced words only (all reduced words of every element).
    Reduced,
}

impl ConfluenceConfig {
    /// The witness search: reduced words up to `bound` in ShortLex order,
    /// then 200 triples of words of length `≤ ⌈bound/2⌉`.
    pub fn witness_search(bound: usize, seed: u64) -> Self {
        ConfluenceConfig {
            exhaustive_len: bound,
            random_words: 0,
            random_len: 0,
            triples: 200,
            triple_len: bound.div_ceil(2),
            seed,
            stop_at_first: true,
            words: WordSet::Reduced,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfluenceReport {
    pub words_checked: usize,
    pub triples_checked: usize,
    pub discrepancies: Vec<Witness>,
}

/// Reduced words of length exactly `len`, lexicographically.
fn reduced_words_of_length(group: &mut CoxeterGroup, len: usize) -> Result<Vec<Vec<u8>>> {
    fn go(
        group: &mut CoxeterGroup,
        prefix: &mut Vec<u8>,
        element: &Word,
        len: usize,
        out: &mut Vec<Vec<u8>>,
    ) -> Result<()> {
        if prefix.len() == len {
            out.push(prefix.clone());
            return Ok(());
        }
        for i in 0..group.rank() as u8 {
            if group.is_descent(element, i, Side::Right)? {
                continue;
            }
            let next = group.mul_gen(element, i, Side::Right)?;
            prefix.push(i);
            go(group, prefix, &next, len, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(group, &mut Vec::new(), &Word::empty(), len, &mut out)?;
    Ok(out)
}

fn words_of_length(rank: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = rank.pow(len as u32);
    (0..total).map(move |mut n| {
        let mut w = alloc::vec![0u8; len];
        for slot in w.iter_mut().rev() {
            *slot = (n % rank) as u8;
            n /= rank;
        }
        w
    })
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..rank) as u8).collect()
}

/// Compare all strategies on the configured words, then test associativity
/// of the reference strategy, at the seeded generic point.
pub fn confluence_check(
    matrix: &CoxeterMatrix,
    config: &ConfluenceConfig,
    budget: Budget,
) -> Result<ConfluenceReport> {
    let point = GenericPoint::seeded(matrix, config.seed);
    confluence_check_at(matrix, &point, config, budget)
}

pub fn confluence_check_at(
    matrix: &CoxeterMatrix,
    point: &GenericPoint,
    config: &ConfluenceConfig,
    budget: Budget,
) -> Result<ConfluenceReport> {
    let mut algs = Strategy::all()
        .into_iter()
        .map(|s| DeformedAlgebra::new(matrix.clone(), point.clone(), s, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ConfluenceReport {
        words_checked: 0,
        triples_checked: 0,
        discrepancies: Vec::new(),
    };
    let rank = matrix.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let exhaustive: Box<dyn Iterator<Item = Vec<u8>>> = match config.words {
        WordSet::All => Box::new((1..=config.exhaustive_len).flat_map(|l| words_of_length(rank, l))),
        WordSet::Reduced => {
            let mut group = CoxeterGroup::with_budget(matrix.clone(), budget);
            let mut all = Vec::new();
            for l in 1..=config.exhaustive_len {
                all.extend(reduced_words_of_length(&mut group, l)?);
            }
            Box::new(all.into_iter())
        }
    };
    let random: Vec<Vec<u8>> = (0..config.random_words)
        .map(|_| random_word(&mut rng, rank, config.random_len))
        .collect();
    for w in exhaustive.chain(random) {
        report.words_checked += 1;
        let (first, rest) = algs.split_first_mut().expect("four strategies");
        let reference = first.normal_form(&w)?;
        for alg in rest {
            let other = alg.normal_form(&w)?;
            if other != reference {
                report.discrepancies.push(Witness::Strategy {
                    word: Word::new(w.clone()),
                    reference: first.strategy(),
                    other: alg.strategy(),
                    reference_value: reference.clone(),
                    other_value: other,
                });
                if config.stop_at_first {
                    return Ok(report);
                }
            }
        }
    }
    let alg = &mut algs[0];
    for _ in 0..config.triples {
        let ws: [Vec<u8>; 3] = core::array::from_fn(|_| random_word(&mut rng, rank, config.triple_len));
        let [x, y, z] = [
            alg.normal_form(&ws[0])?,
            alg.normal_form(&ws[1])?,
            alg.normal_form(&ws[2])?,
        ];
        let xy = alg.multiply(&x, &y)?;
        let left = alg.multiply(&xy, &z)?;
        let yz = alg.multiply(&y, &z)?;
        let right = alg.multiply(&x, &yz)?;
        report.triples_checked += 1;
        if left != right {
            report.discrepancies.push(Witness::Associativity {
                triple: ws.map(Word::new),
                left,
                right,
            });
            if config.stop_at_first {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// First discrepancy found at the seeded generic point with words up to
/// `bound`, or `None`.
pub fn find_nonflat_witness(
    matrix: &CoxeterMatrix,
    bound: usize,
    seed: u64,
    budget: Budget,
) -> Result<Option<Witness>> {
    let report = confluence_check(matrix, &ConfluenceConfig::witness_search(bound, seed), budget)?;
    Ok(report.discrepancies.into_iter().next())
}
