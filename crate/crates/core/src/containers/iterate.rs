use serde::Serialize;

use super::{absorb, container_step, edge_scale, schedule, ContainerFamily, ContainerParams, StepRecord, Verification};
use crate::cycles::CycleKind;
use crate::hypergraph::{complete, EdgeId};
use crate::rng;
use crate::supersat::{balanced_supersat, BoundRegime, SupersatConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterateConfig {
    pub epsilon: f64,
    pub seed: u64,
    /// Family size at which the iteration stops with a partial result.
    pub max_containers: usize,
    /// Container steps allowed in total.
    pub max_steps: usize,
    /// Cap on the branching inside one step.
    pub step_cap: usize,
    pub supersat: SupersatConfig,
}

impl Default for IterateConfig {
    fn default() -> Self {
        IterateConfig {
            epsilon: super::DEFAULT_EPSILON,
            seed: 0,
            max_containers: 100_000,
            max_steps: 20_000,
            step_cap: super::DEFAULT_CONTAINER_CAP,
            supersat: SupersatConfig {
                enforce_precondition: false,
                ..SupersatConfig::default()
            },
        }
    }
}

/// Iterated containers from `K^r_n`.
///
/// Follows the schedule `t_0 > … > t_m`: in round `i` every container with
/// more than `t_{i+1}·scale` edges gets a balanced supersaturated collection
/// and a container step with `B = e(G)·base` and `L = e(G)/(c·polylog)`,
/// `c` being the fitted constant of that collection. Children still above
/// the round's limit are stepped again. Smaller containers pass through.
pub fn iterate_containers(
    n: usize,
    r: usize,
    ell: usize,
    t_target: f64,
    regime: BoundRegime,
    cfg: &IterateConfig,
) -> Result<ContainerFamily> {
    let kind = match regime {
        BoundRegime::Berge => CycleKind::Berge,
        _ => CycleKind::Linear,
    };
    if BoundRegime::for_family(kind, r) != regime {
        return Err(Error::InvalidParameter(format!("regime {regime:?} does not fit r = {r}")));
    }
    let host = complete(n, r)?;
    let ground = host.edge_count();
    let plan = schedule(regime, n as f64, r, ell, t_target, cfg.epsilon)?;
    let scale = edge_scale(regime, n as f64, r, ell);
    let mut family: Vec<Vec<EdgeId>> = vec![(0..ground).collect()];
    let mut steps = Vec::new();
    let mut stalled = 0;
    let mut complete = true;
    'rounds: for i in 0..plan.m() {
        let limit = plan.ts[i + 1] * scale;
        let mut next = Vec::new();
        let mut queue = std::mem::take(&mut family);
        while let Some(g) = queue.pop() {
            if g.len() as f64 <= limit {
                next.push(g);
                continue;
            }
            if steps.len() == cfg.max_steps || next.len() + queue.len() >= cfg.max_containers {
                complete = false;
                next.push(g);
                next.append(&mut queue);
                family = next;
                break 'rounds;
            }
            let sub = host.edge_subgraph(&g);
            let ss = SupersatConfig {
                seed: rng::derive(cfg.seed, steps.len() as u64),
                ..cfg.supersat.clone()
            };
            let out = balanced_supersat(&sub, ell, kind, &ss)?;
            if out.collection.is_empty() {
                stalled += 1;
                next.push(g);
                continue;
            }
            let e = g.len() as f64;
            let b = e * out.bound.base();
            let l = e / (out.bound.c * out.bound.polylog());
            let fam = container_step(&out.collection, b, l, cfg.epsilon, cfg.step_cap)?;
            steps.push(StepRecord {
                iteration: i,
                edges: g.len(),
                copies: out.collection.len(),
                b,
                l,
                implied_c: out.bound.c,
                containers: fam.len(),
                min_omitted: fam.min_omitted,
            });
            queue.extend(fam.containers.into_iter().map(|c| c.into_iter().map(|id| g[id]).collect::<Vec<_>>()));
        }
        family = absorb(ground, next);
    }
    let family = absorb(ground, family);
    let min_omitted = family.iter().map(|c| ground - c.len()).min().unwrap_or(ground);
    Ok(ContainerFamily {
        ground,
        containers: family,
        params: ContainerParams {
            b: None,
            l: None,
            epsilon: cfg.epsilon,
        },
        depth: plan.m(),
        min_omitted,
        achieved_epsilon: None,
        log_size_bound: None,
        complete,
        stalled,
        steps,
        verification: Verification::NotRun,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containers::verify_covering_sampled;
    use crate::cycles::CycleFamily;

    #[test]
    fn target_above_t0_is_the_complete_host() {
        let f = iterate_containers(7, 3, 2, 10.0, BoundRegime::Linear3, &IterateConfig::default()).unwrap();
        assert_eq!(f.containers, vec![(0..35).collect::<Vec<_>>()]);
        assert_eq!(f.depth, 0);
    }

    #[test]
    fn one_round_on_k8_covers_samples() {
        let t0 = 28.0 / 8f64.powf(1.5);
        let cfg = IterateConfig::default();
        let target = t0 * super::super::schedule_ratio(8.0, 2, cfg.epsilon);
        let f = iterate_containers(8, 2, 2, target, BoundRegime::Graph, &cfg).unwrap();
        assert_eq!(f.depth, 1);
        assert!(f.complete && f.stalled == 0);
        assert!(f.containers.iter().all(|c| c.len() as f64 <= target * 8f64.powf(1.5)));
        assert!(f.steps.iter().all(|s| s.min_omitted >= 1));
        let h = complete(8, 2).unwrap();
        let rep = verify_covering_sampled(&f, &h, &CycleFamily::linear(2, 4).unwrap(), 300, 1).unwrap();
        assert_eq!(rep.failures, 0);
    }
}
