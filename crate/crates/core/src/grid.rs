//! Fixed grids of finite types used to instantiate type-schematic checks.

use std::fmt;
use std::str::FromStr;

use crate::syntax::FiniteType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Grid {
    /// `0`, `0>0`, `(0>0)>0`, `0*0`.
    #[default]
    Small,
    /// The small grid plus `0>(0>0)`, `(0>0)*0` and `((0>0)>0)>0`.
    Full,
}

impl Grid {
    pub fn types(self) -> Vec<FiniteType> {
        let g = FiniteType::Ground;
        let g2g = FiniteType::arrow(g.clone(), g.clone());
        let type2 = FiniteType::arrow(g2g.clone(), g.clone());
        let mut out = vec![
            g.clone(),
            g2g.clone(),
            type2.clone(),
            FiniteType::product(g.clone(), g.clone()),
        ];
        if self == Grid::Full {
            out.push(FiniteType::arrow(g.clone(), g2g.clone()));
            out.push(FiniteType::product(g2g, g.clone()));
            out.push(FiniteType::arrow(type2, g));
        }
        out
    }

    /// The higher types of the grid.
    pub fn higher_types(self) -> Vec<FiniteType> {
        self.types().into_iter().filter(|t| !t.is_ground()).collect()
    }

    /// All `n`-tuples of grid types, in lexicographic grid order.
    pub fn tuples(self, n: usize) -> Vec<Vec<FiniteType>> {
        let types = self.types();
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    types.iter().map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Grid::Small),
            "full" => Ok(Grid::Full),
            other => Err(format!("unknown grid `{}` (expected small or full)", other)),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Grid::Small => "small",
            Grid::Full => "full",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_counts() {
        assert_eq!(Grid::Small.tuples(3).len(), 64);
        assert_eq!(Grid::Full.tuples(2).len(), 49);
        assert_eq!(Grid::Small.tuples(0), vec![Vec::<FiniteType>::new()]);
        assert_eq!(Grid::Small.higher_types().len(), 3);
    }
}
