use pproj::complex::{push_through, DomainWord};
use pproj::words::{GenWord, Letter};
use pproj::Variant;
use std::io::Write;

fn main() {
    let cases = [
        ("C", "A"), ("CC", "A"), ("CCA", "1"), ("cc", "B"), ("CaC", "AB"),
        ("bACcb", "1"), ("CCCCC", "A"), ("ccccc", "B"), ("CaCbc", "AB"), ("acbca", "A"),
    ];
    for variant in [Variant::N2, Variant::N3] {
        for (s_text, d_text) in cases {
            let s = GenWord::parse(s_text, variant).unwrap();
            let d_word = GenWord::parse(d_text, variant).unwrap();
            let letters: Vec<Letter> = d_word.letters().unwrap().to_vec();
            let domain = DomainWord::Word { t_power: 0, word: letters };
            print!("variant {variant} push({s_text}, {d_text}) ... ");
            std::io::stdout().flush().unwrap();
            let t0 = std::time::Instant::now();
            let r = push_through(&s, &domain);
            println!("{:?} in {:?}", r.map(|(p, _)| p.len()).map_err(|e| e.to_string().chars().take(40).collect::<String>()), t0.elapsed());
        }
    }
}
