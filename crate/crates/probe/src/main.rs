use secantry::*;
use secantry::ideal_ops::*;
use secantry::parse::*;
use secantry::groebner::Budget;
use secantry::betti::{betti_table, BettiOptions, regularity_report};
use secantry::secant::{secant_degree_piece, certify_generation};

fn main() {
    env_logger::init();
    let f = PrimeField::default_field();
    let budget = Budget::default();

    // Build the g2d9 curve.
    let r3 = RingSpec::projective(f, 2).unwrap();
    let mk = |gens: &[&str]| Ideal::new(&r3, gens.iter().map(|s| parse_poly(&r3, s).unwrap()).collect());
    let nodes = [mk(&["x_0","x_1"]), mk(&["x_0","x_2"]), mk(&["x_1","x_2"]), mk(&["x_0-x_1","x_1-x_2"])];
    let sq = |i: &Ideal| {
        let g = i.generators();
        let mut out = Vec::new();
        for a in 0..g.len() { for b in a..g.len() { out.push(g[a].mul(&g[b])); }}
        Ideal::new(&r3, out)
    };
    let sqs: Vec<Ideal> = nodes.iter().map(sq).collect();
    let inter = intersect_ideals(&sqs, None, &budget).unwrap();
    let m = truncate_ideal(5, &inter).unwrap();
    let tgt = RingSpec::new(f, vec![Block{name:"y".into(), vars:(0..9).map(|i| format!("y_{i}")).collect()}], vec![]).unwrap();
    let k = kernel_of_ring_map(&r3, &m.basis_polys(), &tgt, &budget).unwrap();
    let g = random_linear_change(&tgt, 1);
    let gk = g.apply_ideal(&k);
    let mut gens = gk.generators().to_vec();
    gens.push(Polynomial::var(&tgt, 8));
    let j = eliminate(&Ideal::new(&tgt, gens), &[8], &budget).unwrap();
    println!("curve built; {} gens", j.generators().len());

    // Betti table of the curve (criterion 5 target).
    let t0 = std::time::Instant::now();
    let (table, _hd) = betti_table(&j, &BettiOptions::default(), &budget).unwrap();
    println!("curve betti: {:?} complete={}", t0.elapsed(), table.complete);
    print!("{}", table.paper_text());
    let rep = regularity_report(&table, &j, false, &budget).unwrap();
    println!("reg(S/I)={} reg(I)={:?} pd={} codim={} acm={}", rep.reg_module, rep.reg_ideal, rep.projective_dimension, rep.codim, rep.acm);

    // Secant via prolongation (criterion 6 target).
    let quad_basis = truncate_ideal(2, &j).unwrap();
    println!("curve quadrics: {}", quad_basis.dim());
    let jq = Ideal::new(j.ring(), quad_basis.basis_polys());
    let t1 = std::time::Instant::now();
    let p = secant_degree_piece(&jq, 1, &budget).unwrap();
    println!("prolongation: {:?}, dim = {}", t1.elapsed(), p.dim());
    let t2 = std::time::Instant::now();
    let cert = certify_generation(&p, 3, None, 7, &budget).unwrap();
    println!("certify: {:?} -> dim {} deg {} codim {} acm {}", t2.elapsed(), cert.dim, cert.degree, cert.codim, cert.acm);
    let sec = Ideal::new(j.ring(), p.basis_polys());
    let t3 = std::time::Instant::now();
    let (stab, _shd) = betti_table(&sec, &BettiOptions::default(), &budget).unwrap();
    println!("secant betti: {:?} complete={}", t3.elapsed(), stab.complete);
    print!("{}", stab.paper_text());
    let srep = regularity_report(&stab, &sec, false, &budget).unwrap();
    println!("reg(S/I)={} reg(I)={:?} pd={} codim={} acm={}", srep.reg_module, srep.reg_ideal, srep.projective_dimension, srep.codim, srep.acm);
}
