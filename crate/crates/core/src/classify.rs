//! Trichotomy for subgroups generated by a small finite set of elements:
//! contained in a conjugate of one factor, infinite cyclic, or neither.

use crate::error::{Error, Result};
use crate::factors::Side;
use crate::words::{FreeProduct, ReducedWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupClass {
    /// Every element lies in `conjugator · F · conjugator⁻¹` for the factor `F`
    /// on side `which`. The conjugator is the coset representative of
    /// `conjugator · F` whose last letter is not in `F`.
    FactorConjugate { which: Side, conjugator: ReducedWord },
    /// Every element is a power of the primitive `root`.
    InfiniteCyclic { root: ReducedWord },
    /// Two elements of the set that generate a subgroup of neither kind above.
    ContainsFreePair { witnesses: (ReducedWord, ReducedWord) },
}

impl SubgroupClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SubgroupClass::FactorConjugate { .. } => "factor-conjugate",
            SubgroupClass::InfiniteCyclic { .. } => "infinite-cyclic",
            SubgroupClass::ContainsFreePair { .. } => "contains-free-pair",
        }
    }
}

// Per-element data the classifier compares.
enum Shape {
    InFactor { side: Side, conjugator: ReducedWord },
    Loxodromic { root: ReducedWord },
}

impl FreeProduct {
    fn shape(&self, x: &ReducedWord) -> Result<Shape> {
        let d = self.cyclic_reduce(x)?;
        if d.core.word_length() == 1 {
            let side = d.core.first().expect("core has one letter").side();
            Ok(Shape::InFactor {
                side,
                conjugator: d.conjugator,
            })
        } else {
            Ok(Shape::Loxodromic {
                root: self.canonical_root(x)?.0,
            })
        }
    }

    /// Classifies `⟨S⟩` for a finite set `S` of non-identity elements.
    pub fn classify_small_set(&self, set: &[ReducedWord]) -> Result<SubgroupClass> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        if set.iter().any(ReducedWord::is_identity) {
            return Err(Error::IdentityInSet);
        }
        let shapes = set.iter().map(|x| self.shape(x)).collect::<Result<Vec<_>>>()?;
        let compatible = |s: &Shape, t: &Shape| match (s, t) {
            (
                Shape::InFactor {
                    side: s1,
                    conjugator: c1,
                },
                Shape::InFactor {
                    side: s2,
                    conjugator: c2,
                },
            ) => s1 == s2 && c1 == c2,
            (Shape::Loxodromic { root: r1 }, Shape::Loxodromic { root: r2 }) => r1 == r2,
            _ => false,
        };
        // Compatibility with the first element is transitive here: both the
        // coset representative and the canonical root are unique.
        match shapes[1..].iter().position(|s| !compatible(&shapes[0], s)) {
            Some(j) => Ok(SubgroupClass::ContainsFreePair {
                witnesses: (set[0].clone(), set[j + 1].clone()),
            }),
            None => Ok(match shapes.into_iter().next().unwrap() {
                Shape::InFactor { side, conjugator } => SubgroupClass::FactorConjugate {
                    which: side,
                    conjugator,
                },
                Shape::Loxodromic { root } => SubgroupClass::InfiniteCyclic { root },
            }),
        }
    }

    /// Representative of the coset `g · F` (factor `F` on `side`) whose last
    /// letter is not in `F`.
    pub fn coset_representative(&self, g: &ReducedWord, side: Side) -> ReducedWord {
        match g.last() {
            Some(l) if l.side() == side => {
                self.reduce(g.letters()[..g.word_length() - 1].iter().copied())
            }
            _ => g.clone(),
        }
    }

    /// The verdict for `{g s g⁻¹ : s ∈ S}` predicted from the verdict for `S`.
    pub fn transport_class(&self, class: &SubgroupClass, g: &ReducedWord) -> SubgroupClass {
        match class {
            SubgroupClass::FactorConjugate { which, conjugator } => SubgroupClass::FactorConjugate {
                which: *which,
                conjugator: self.coset_representative(&self.mul(g, conjugator), *which),
            },
            SubgroupClass::InfiniteCyclic { root } => {
                let moved = self.conjugate(root, g);
                let inverse = self.inv(&moved);
                SubgroupClass::InfiniteCyclic {
                    root: moved.min(inverse),
                }
            }
            SubgroupClass::ContainsFreePair { witnesses: (x, y) } => SubgroupClass::ContainsFreePair {
                witnesses: (self.conjugate(x, g), self.conjugate(y, g)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &FreeProduct, s: &str) -> ReducedWord {
        g.parse_word(s).unwrap()
    }

    #[test]
    fn factor_conjugate() {
        let g = FreeProduct::parse("Z/5 * Z").unwrap();
        let class = g.classify_small_set(&[w(&g, "a^2"), w(&g, "a^4")]).unwrap();
        assert_eq!(
            class,
            SubgroupClass::FactorConjugate {
                which: Side::A,
                conjugator: ReducedWord::identity()
            }
        );
        let class = g
            .classify_small_set(&[w(&g, "b a^2 b^-1"), w(&g, "b a b^-1")])
            .unwrap();
        assert_eq!(
            class,
            SubgroupClass::FactorConjugate {
                which: Side::A,
                conjugator: w(&g, "b")
            }
        );
    }

    #[test]
    fn infinite_cyclic() {
        let g = FreeProduct::parse("Z * Z").unwrap();
        let class = g
            .classify_small_set(&[w(&g, "a b"), w(&g, "a b a b a b")])
            .unwrap();
        assert_eq!(class, SubgroupClass::InfiniteCyclic { root: w(&g, "a b") });
        // inverse powers still share the root
        let class = g
            .classify_small_set(&[w(&g, "b^-1 a^-1"), w(&g, "a b a b")])
            .unwrap();
        // shortlex puts a before b^-1, so the positive orientation wins
        assert_eq!(class, SubgroupClass::InfiniteCyclic { root: w(&g, "a b") });
    }

    #[test]
    fn free_pair() {
        let g = FreeProduct::parse("Z/3 * Z/3").unwrap();
        let class = g.classify_small_set(&[w(&g, "a"), w(&g, "b")]).unwrap();
        assert_eq!(
            class,
            SubgroupClass::ContainsFreePair {
                witnesses: (w(&g, "a"), w(&g, "b"))
            }
        );
        // same factor, different conjugates
        let class = g.classify_small_set(&[w(&g, "a"), w(&g, "b a b^2")]).unwrap();
        assert_eq!(class.tag(), "contains-free-pair");
        // mixed elliptic and loxodromic
        let class = g.classify_small_set(&[w(&g, "a b"), w(&g, "a")]).unwrap();
        assert_eq!(class.tag(), "contains-free-pair");
    }

    #[test]
    fn conjugator_ending_in_factor_is_normalised() {
        let g = FreeProduct::parse("Z * Z").unwrap();
        let x = g.conjugate(&w(&g, "a"), &w(&g, "b a^3"));
        assert_eq!(
            g.classify_small_set(&[x]).unwrap(),
            SubgroupClass::FactorConjugate {
                which: Side::A,
                conjugator: w(&g, "b")
            }
        );
    }

    #[test]
    fn errors() {
        let g = FreeProduct::parse("Z * Z").unwrap();
        assert_eq!(g.classify_small_set(&[]), Err(Error::EmptySet));
        assert_eq!(
            g.classify_small_set(&[w(&g, "a"), ReducedWord::identity()]),
            Err(Error::IdentityInSet)
        );
    }

    #[test]
    fn transport_matches_reclassification() {
        let g = FreeProduct::parse("Z/5 * Z").unwrap();
        let sets = [
            vec![w(&g, "a^2"), w(&g, "a^3")],
            vec![w(&g, "a b"), w(&g, "a b a b")],
            vec![w(&g, "a"), w(&g, "b")],
        ];
        for set in sets {
            let class = g.classify_small_set(&set).unwrap();
            for conj in ["a", "b^-2 a^3", "a b a^4 b"] {
                let h = w(&g, conj);
                let moved: Vec<_> = set.iter().map(|s| g.conjugate(s, &h)).collect();
                assert_eq!(g.classify_small_set(&moved).unwrap(), g.transport_class(&class, &h));
            }
        }
    }
}
