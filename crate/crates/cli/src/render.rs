use kodag_core::incidence::zeta_closure;
use kodag_core::GradedPoset;

/// Staircase glyphs of the zeta matrix: `1` on the diagonal, `0` for the
/// zeros above it, `-` for the remaining ones and blanks below the diagonal.
/// Lines are cut at `width` characters.
pub fn lascala(p: &GradedPoset, width: usize) -> String {
    let zeta = zeta_closure(p);
    let dim = zeta.dim();
    let mut out = String::new();
    for i in 0..dim {
        let mut line = String::with_capacity(2 * dim);
        for j in 0..dim {
            if j > 0 {
                line.push(' ');
            }
            line.push(match j {
                j if j < i => ' ',
                j if j == i => '1',
                j if zeta.get(i, j).sign() == num_bigint::Sign::NoSign => '0',
                _ => '-',
            });
        }
        let cut: String = line.chars().take(width).collect();
        out.push_str(cut.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kodag_core::Sequence;

    fn zero_runs(text: &str) -> Vec<usize> {
        text.lines()
            .map(|l| l.trim_start().split(' ').skip(1).take_while(|g| *g == "0").count())
            .collect()
    }

    #[test]
    fn naturals_four_levels() {
        let p = GradedPoset::cobweb(&Sequence::naturals(), 4).unwrap();
        let text = lascala(&p, 1000);
        assert_eq!(zero_runs(&text), vec![0, 1, 0, 2, 1, 0, 3, 2, 1, 0]);
        assert_eq!(text.lines().next().unwrap(), "1 - - - - - - - - -");
        assert_eq!(text.lines().nth(1).unwrap(), "  1 0 - - - - - - -");
    }

    #[test]
    fn single_level() {
        let p = GradedPoset::cobweb(&Sequence::naturals(), 1).unwrap();
        assert_eq!(lascala(&p, 80), "1\n");
    }

    #[test]
    fn width_cap() {
        let p = GradedPoset::cobweb(&Sequence::naturals(), 5).unwrap();
        assert!(lascala(&p, 9).lines().all(|l| l.chars().count() <= 9));
    }
}
