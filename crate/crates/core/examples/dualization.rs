//! Turns a monotone supermodular set function into a polymatroid with
//! `rho'(X) = rho(E) - rho(E \ X)`.

use pathset::polymatroid::{check_axioms, dualize, SetFunctionTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // rho(X) = |X|^2 on three elements: supermodular, monotone, rho(empty) = 0.
    let ground = vec!["a".to_owned(), "b".to_owned(), "c".to_owned()];
    let t = SetFunctionTable::from_fn(ground, |x| f64::from(x.count_ones()).powi(2))?;
    let dual = dualize(&t);

    println!("{:<10} {:>5} {:>5}", "X", "rho", "rho'");
    for x in 0..t.len() as u32 {
        println!(
            "{:<10} {:>5} {:>5}",
            format!("{{{}}}", t.labels(x).join(",")),
            t.value(x),
            dual.value(x)
        );
    }
    println!("\nrho  : {}", check_axioms(&t).classification_label());
    println!("rho' : {}", check_axioms(&dual).classification_label());
    println!("dual of dual equals rho: {}", dualize(&dual) == t);
    Ok(())
}
