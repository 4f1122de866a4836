use weber_cm::arith::{factorize, kronecker, primes_up_to};
use weber_cm::classpoly::{minimal_polynomial, poly_discriminant, resultant};
use weber_cm::predictions::{
    ord_disc_pairs, predicted_disc_factorization, predicted_resultant_factorization, MainFormula,
    PredictionContext,
};
use weber_cm::quadorders::{ClassGroup, Discriminant, QuadClass};

fn main() {
    // full admissible fundamental sweep with route equivalence
    let mut checked = 0u64;
    for dabs in 1..=400i64 {
        let d = -dabs;
        let disc = match Discriminant::new(d) {
            Ok(x) => x,
            Err(_) => continue,
        };
        if !disc.is_fundamental() || !disc.yz_admissible() {
            continue;
        }
        let g = ClassGroup::new(disc).unwrap();
        let g0 = ClassGroup::new(disc).unwrap();
        for s in [1i64, 2, 3, 4, 6, 8, 12, 24] {
            let (p, _) = minimal_polynomial(&g, s as u32, 192).unwrap();
            let exact = factorize(&poly_discriminant(&p)).unwrap().abs();
            let predicted = predicted_disc_factorization(&g, s);
            if exact != predicted.abs() && g.h() > 1 {
                println!("DISC MISMATCH D={} s={}: exact {} predicted {}", d, s, exact, predicted);
            }
            let ctx = PredictionContext::new(g.clone(), g.clone(), g0.clone(), s).unwrap();
            let principal = QuadClass::principal(d);
            for twist in &g.classes {
                if *twist == principal {
                    continue;
                }
                let mf = MainFormula::new(&ctx, &principal, twist).unwrap();
                for ell in primes_up_to(-d) {
                    if kronecker(d, ell) == 1 {
                        continue;
                    }
                    let main = mf.ord(ell);
                    let pairs = ord_disc_pairs(&g, twist, s, ell);
                    if main != pairs {
                        println!(
                            "ROUTE MISMATCH D={} s={} twist={:?} l={}: main {} pairs {}",
                            d, s, twist, ell, main, pairs
                        );
                        checked += 1000000;
                    }
                    checked += 1;
                }
            }
        }
        if dabs % 100 == 1 {
            println!("... D = {} reached, {} ord-pairs checked", d, checked);
        }
    }
    println!("sweep done: {} ord comparisons", checked);

    // resultant pipeline agreement on (-31, -279), s = 1
    let g1 = ClassGroup::new(Discriminant::new(-31).unwrap()).unwrap();
    let g2 = ClassGroup::new(Discriminant::new(-279).unwrap()).unwrap();
    let g0 = ClassGroup::new(Discriminant::new(-31).unwrap()).unwrap();
    let (p1, _) = minimal_polynomial(&g1, 1, 256).unwrap();
    let (p2, _) = minimal_polynomial(&g2, 1, 512).unwrap();
    let r = resultant(&p1, &p2);
    let exact = factorize(&r).unwrap();
    let ctx = PredictionContext::new(g1, g2, g0, 1).unwrap();
    let predicted = predicted_resultant_factorization(&ctx);
    println!("res(-31,-279) exact   = {}", exact);
    println!("res(-31,-279) predict = {}", predicted);
    println!("match: {}", exact.abs() == predicted.abs());
}
