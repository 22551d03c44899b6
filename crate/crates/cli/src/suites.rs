//! Named verification suites. Each suite expands into independent checks
//! with stable ids; checks run in parallel and report a witness string on
//! failure.

use std::collections::BTreeSet;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use webperm_core::actions::{
    bfs_orbit, bfs_psi, bfs_psi_set, c_map, fs_phi, hr_phi, is_representative_form, lambda,
    lambda_web, min_max_tree, orbit_representative, valley_support,
};
use webperm_core::chord::{b_minus_capped, b_plus_capped, n_crossing};
use webperm_core::grid::tilde_webs_capped;
use webperm_core::perm::enumerate_capped;
use webperm_core::poly::{
    at_eulerian_capped, d_web_capped, ddfree_poly_capped, delta_poly_capped, gamma_expand,
    pk_mix_check_capped, representative_poly_capped, series_expand_capped, web_poly_capped,
};
use webperm_core::seq::{euler_number, genocchi_first, genocchi_median, seidel};
use webperm_core::{BigInt, Permutation, Selection, Word};

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_n: usize,
    pub max_chords: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    /// First-letter counts of adjacent-matching leaves against the
    /// Seidel triangle.
    ConjectureHjo,
    /// Gamma coefficients of the refined descent polynomial from web
    /// statistics.
    GammaXz,
    /// One joint distribution over webs and over cycle-up-down
    /// permutations.
    Equidist,
    /// Cycle relabeling bijection with tracked statistics.
    Lambda,
    /// Involutions, orbits and representatives of the three actions.
    Actions,
    /// Chord expansion multiplicities and strategy independence.
    Chord,
    /// Exponential generating series against enumeration.
    Series,
    /// Peaks and mixes over the whole symmetric group.
    PkMix,
    /// Every suite above.
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::ConjectureHjo => "conjecture-hjo",
            Suite::GammaXz => "gamma-xz",
            Suite::Equidist => "equidist",
            Suite::Lambda => "lambda",
            Suite::Actions => "actions",
            Suite::Chord => "chord",
            Suite::Series => "series",
            Suite::PkMix => "pk-mix",
            Suite::All => "all",
        }
    }
}

#[derive(Serialize, Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub id: String,
    pub status: &'static str,
    pub witness: Option<String>,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub params: Params,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
pub struct Params {
    pub max_n: usize,
    pub max_chords: usize,
}

type Body = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

pub struct CheckPlan {
    id: String,
    body: Body,
}

fn plan_one(
    out: &mut Vec<CheckPlan>,
    id: String,
    body: impl Fn() -> Result<(), String> + Send + Sync + 'static,
) {
    out.push(CheckPlan {
        id,
        body: Box::new(body),
    });
}

/// Runs every check, then sorts by id so reports are stable.
pub fn run(plans: Vec<CheckPlan>) -> Vec<Check> {
    let mut checks: Vec<Check> = plans
        .into_par_iter()
        .map(|p| {
            let (status, witness) = match (p.body)() {
                Ok(()) => ("pass", None),
                Err(w) => ("fail", Some(w)),
            };
            Check {
                id: p.id,
                status,
                witness,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    checks
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status == "pass")
}

fn core<T>(r: webperm_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

/// First-letter counts over the adjacent-matching leaves of the identity,
/// indexed by letter.
pub fn first_letter_counts(n: usize, cap: usize) -> webperm_core::Result<Vec<usize>> {
    let mut count = vec![0usize; n + 1];
    for s in tilde_webs_capped(n, cap)? {
        count[s.oneline()[0] as usize] += 1;
    }
    Ok(count)
}

pub fn plan(suite: Suite, caps: Caps) -> Vec<CheckPlan> {
    let mut out = Vec::new();
    match suite {
        Suite::ConjectureHjo => conjecture_hjo(&mut out, caps),
        Suite::GammaXz => gamma_xz(&mut out, caps),
        Suite::Equidist => equidist(&mut out, caps),
        Suite::Lambda => lambda_suite(&mut out, caps),
        Suite::Actions => actions_suite(&mut out, caps),
        Suite::Chord => chord_suite(&mut out, caps),
        Suite::Series => series_suite(&mut out, caps),
        Suite::PkMix => pk_mix(&mut out, caps),
        Suite::All => {
            conjecture_hjo(&mut out, caps);
            gamma_xz(&mut out, caps);
            equidist(&mut out, caps);
            lambda_suite(&mut out, caps);
            actions_suite(&mut out, caps);
            chord_suite(&mut out, caps);
            series_suite(&mut out, caps);
            pk_mix(&mut out, caps);
        }
    }
    out
}

fn conjecture_hjo(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 1..=caps.max_n {
        plan_one(out, format!("conjecture-hjo/first-letters/n={n:02}"), move || {
            let count = core(first_letter_counts(n, caps.max_n))?;
            let total: usize = count.iter().sum();
            if n == 1 {
                return ensure(count[1] == 1, || "size 1 should have one leaf".into());
            }
            for k in (2..=n).step_by(2) {
                ensure(count[k] == 0, || {
                    format!("even first letter {k} appears {} times", count[k])
                })?;
            }
            ensure(count[n] == 0, || {
                format!("top first letter appears {} times", count[n])
            })?;
            if n % 2 == 1 {
                let m = (n + 1) / 2;
                for k in 1..m {
                    let want = core(seidel(n - 1, k))?;
                    ensure(BigInt::from(count[2 * k - 1]) == want, || {
                        format!("letter {}: count {} vs {}", 2 * k - 1, count[2 * k - 1], want)
                    })?;
                }
            } else {
                let m = n / 2;
                for k in 1..=m {
                    let want = core(seidel(n - 1, m - k + 1))?;
                    ensure(BigInt::from(count[2 * k - 1]) == want, || {
                        format!("letter {}: count {} vs {}", 2 * k - 1, count[2 * k - 1], want)
                    })?;
                }
            }
            let want_total = if n % 2 == 1 {
                core(genocchi_first((n + 1) / 2))?
            } else {
                core(genocchi_median(n / 2))?
            };
            ensure(BigInt::from(total) == want_total, || {
                format!("total {total} vs {want_total}")
            })
        });
    }
}

fn gamma_xz(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 1..=caps.max_n {
        plan_one(out, format!("gamma-xz/expansion/n={n:02}"), move || {
            let refined = core(at_eulerian_capped(n, caps.max_n))?;
            let gammas = core(gamma_expand(&refined, n))?;
            for (i, g) in gammas.iter().enumerate() {
                let want = core(d_web_capped(n, i as u32, caps.max_n))?
                    .scale(&(BigInt::from(1) << i));
                ensure(g == &want, || {
                    format!("coefficient {i}: {g} vs {want}")
                })?;
            }
            Ok(())
        });
    }
}

fn equidist(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 0..=caps.max_n {
        plan_one(out, format!("equidist/joint/n={n:02}"), move || {
            let web = core(web_poly_capped(n, caps.max_n))?;
            let cud = core(delta_poly_capped(n, caps.max_n))?;
            ensure(web == cud, || format!("webs {web} vs cycle-up-down {cud}"))
        });
    }
}

fn lambda_suite(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 1..=caps.max_n {
        plan_one(out, format!("lambda/bijection/n={n:02}"), move || {
            let mut images = BTreeSet::new();
            let mut webs = 0usize;
            for s in core(enumerate_capped(n, caps.max_n))?.filter(|s| s.is_web()) {
                webs += 1;
                let img = core(lambda_web(&s))?;
                let st = s.statistics();
                let it = img.statistics();
                ensure(it.fix == st.fix && it.cyc == st.cyc, || {
                    format!("{s}: cycle statistics moved under the relabeling")
                })?;
                ensure(img.drop_hat() == st.drop, || {
                    format!("{s}: drop {} vs transported {}", st.drop, img.drop_hat())
                })?;
                ensure(img.is_cycle_up_down(), || {
                    format!("{s}: image {img} is not cycle-up-down")
                })?;
                images.insert(img);
            }
            ensure(images.len() == webs, || "relabeling is not injective".into())?;
            let cud = core(enumerate_capped(n, caps.max_n))?
                .filter(|s| s.is_cycle_up_down())
                .count();
            ensure(images.len() == cud, || {
                format!("{} images vs {} cycle-up-down permutations", images.len(), cud)
            })
        });
    }
    plan_one(out, "lambda/example".into(), || {
        let got = core(lambda(&[5, 1, 3, 6, 7, 2, 4, 8]))?;
        let want = core(Word::new(vec![5, 8, 2, 6, 4, 7, 1, 3]))?;
        ensure(got == want, || format!("got {got}, want {want}"))
    });
}

fn actions_suite(out: &mut Vec<CheckPlan>, caps: Caps) {
    // Exhaustive involution and commutation checks explode fast, so they
    // stop at fixed small sizes even when the cap is higher.
    for n in 1..=caps.max_n.min(6) {
        plan_one(out, format!("actions/involutions/n={n:02}"), move || {
            for s in core(enumerate_capped(n, caps.max_n))? {
                let w = s.oneline();
                for x in 1..=n as u32 {
                    let once = core(fs_phi(w, x))?;
                    ensure(core(fs_phi(&once, x))?.letters() == w, || {
                        format!("valley exchange at {s}, letter {x}")
                    })?;
                    for y in x + 1..=n as u32 {
                        let xy = core(fs_phi(&core(fs_phi(w, x))?, y))?;
                        let yx = core(fs_phi(&core(fs_phi(w, y))?, x))?;
                        ensure(xy == yx, || {
                            format!("valley exchanges do not commute at {s} ({x},{y})")
                        })?;
                    }
                }
                let t = core(min_max_tree(w))?;
                for i in 1..=n {
                    let once = core(hr_phi(&t, i))?;
                    ensure(core(hr_phi(&once, i))? == t, || {
                        format!("tree flip at {s}, position {i}")
                    })?;
                    for j in i + 1..=n {
                        let ij = core(hr_phi(&core(hr_phi(&t, i))?, j))?;
                        let ji = core(hr_phi(&core(hr_phi(&t, j))?, i))?;
                        ensure(ij == ji, || {
                            format!("tree flips do not commute at {s} ({i},{j})")
                        })?;
                    }
                }
                if !s.has_double_descent() {
                    let support: Vec<u32> = valley_support(&s).into_iter().collect();
                    for &x in &support {
                        let once = core(bfs_psi(&s, x))?;
                        ensure(!once.has_double_descent(), || {
                            format!("block exchange left the class at {s}, letter {x}")
                        })?;
                        ensure(core(bfs_psi(&once, x))? == s, || {
                            format!("block exchange at {s}, letter {x}")
                        })?;
                        for &y in &support {
                            let xy = core(bfs_psi(&core(bfs_psi(&s, x))?, y))?;
                            let yx = core(bfs_psi(&core(bfs_psi(&s, y))?, x))?;
                            ensure(xy == yx, || {
                                format!("block exchanges do not commute at {s} ({x},{y})")
                            })?;
                        }
                    }
                }
            }
            Ok(())
        });
    }
    for n in 1..=caps.max_n.min(7) {
        plan_one(out, format!("actions/orbits/n={n:02}"), move || {
            for s in core(enumerate_capped(n, caps.max_n))?.filter(|s| !s.has_double_descent()) {
                let orbit = core(bfs_orbit(&s))?;
                let support = valley_support(&s);
                ensure(orbit.len() == 1 << support.len(), || {
                    format!("orbit of {s} has {} members", orbit.len())
                })?;
                let st = s.statistics();
                for q in &orbit {
                    let qt = q.statistics();
                    ensure(
                        qt.des == st.des
                            && qt.rmida == st.rmida
                            && qt.lmi + qt.rmi == st.lmi + st.rmi,
                        || format!("statistics vary across the orbit of {s}"),
                    )?;
                }
                let mut reps = 0usize;
                for q in &orbit {
                    if core(is_representative_form(q))? {
                        reps += 1;
                    }
                }
                ensure(reps == 1, || {
                    format!("orbit of {s} has {reps} representatives")
                })?;
                let rep = core(orbit_representative(&s))?;
                ensure(orbit.contains(&rep), || {
                    format!("representative of {s} left its orbit")
                })?;
            }
            Ok(())
        });
    }
    for n in 1..=caps.max_n.min(8) {
        plan_one(out, format!("actions/orbit-identity/n={n:02}"), move || {
            let left = core(ddfree_poly_capped(n, caps.max_n))?;
            let right = core(representative_poly_capped(n, caps.max_n))?.double_per_x();
            ensure(left == right, || format!("{left} vs doubled {right}"))
        });
    }
    plan_one(out, "actions/example".into(), || {
        let sigma: Permutation = core("3,4,8,5,7,10,1,6,2,9".parse())?;
        let cases: [(&[u32], &str); 7] = [
            (&[2], "3,4,8,5,7,10,2,6,1,9"),
            (&[3], "1,6,2,4,7,10,5,8,3,9"),
            (&[5], "3,4,7,10,5,8,1,6,2,9"),
            (&[2, 3], "2,6,1,4,7,10,5,8,3,9"),
            (&[2, 5], "3,4,7,10,5,8,2,6,1,9"),
            (&[3, 5], "1,6,2,4,8,5,7,10,3,9"),
            (&[2, 3, 5], "2,6,1,4,8,5,7,10,3,9"),
        ];
        for (xs, want) in cases {
            let set: BTreeSet<u32> = xs.iter().copied().collect();
            let got = core(bfs_psi_set(&sigma, &set))?;
            let want: Permutation = core(want.parse())?;
            ensure(got == want, || format!("letters {xs:?}: got {got}, want {want}"))?;
        }
        let rep: Permutation = core("1,6,2,4,8,5,7,10,3,9".parse())?;
        ensure(core(orbit_representative(&sigma))? == rep, || {
            "representative of the worked example moved".into()
        })?;
        let img = core(c_map(&rep))?;
        let want: Permutation = core("5,3,7,6,1,9,4,8,2".parse())?;
        ensure(img == want, || format!("cycle reading gave {img}, want {want}"))
    });
}

fn chord_suite(out: &mut Vec<CheckPlan>, caps: Caps) {
    for m in 1..=caps.max_chords {
        plan_one(out, format!("chord/selection/m={m:02}"), move || {
            let diagram = n_crossing(m);
            let first = core(diagram.ncd_with(Selection::First, caps.max_chords))?;
            let last = core(diagram.ncd_with(Selection::Last, caps.max_chords))?;
            ensure(first == last, || {
                format!("selection strategies disagree on the {m}-crossing")
            })?;
            for (leaf, _) in first.iter() {
                ensure(leaf.is_noncrossing(), || "a leaf still crosses".into())?;
            }
            let want = euler_number(m + 1);
            ensure(BigInt::from(first.total()) == want, || {
                format!("total {} vs {}", first.total(), want)
            })
        });
    }
    for n in 1..caps.max_chords {
        plan_one(out, format!("chord/necklace/n={n:02}"), move || {
            for k in 0..=n {
                let plus = core(b_plus_capped(n, k, caps.max_chords))?;
                let want = if n % 2 == 1 {
                    let m = (n + 1) / 2;
                    core(seidel(2 * m, m - k / 2))?
                } else {
                    let m = n / 2;
                    core(seidel(2 * m + 1, k / 2 + 1))?
                };
                ensure(BigInt::from(plus.clone()) == want, || {
                    format!("plus multiplicity at k={k}: {plus} vs {want}")
                })?;
                if k >= 1 {
                    let minus = core(b_minus_capped(n, k, caps.max_chords))?;
                    let prev = core(b_plus_capped(n, k - 1, caps.max_chords))?;
                    ensure(minus == prev, || {
                        format!("shift at k={k}: {minus} vs {prev}")
                    })?;
                }
            }
            Ok(())
        });
    }
}

fn series_suite(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 0..=caps.max_n {
        plan_one(out, format!("series/coefficient/n={n:02}"), move || {
            let series = core(series_expand_capped(caps.max_n, caps.max_n))?;
            let got = core(series.coefficient_poly(n))?;
            let want = core(web_poly_capped(n, caps.max_n))?.set_x_one();
            ensure(got == want, || format!("{got} vs enumeration {want}"))
        });
    }
}

fn pk_mix(out: &mut Vec<CheckPlan>, caps: Caps) {
    for n in 0..=caps.max_n {
        plan_one(out, format!("pk-mix/equidistribution/n={n:02}"), move || {
            ensure(core(pk_mix_check_capped(n, caps.max_n))?, || {
                "peak and mix distributions or the doubled expansion differ".into()
            })
        });
    }
}
