#include <algorithm>

#include "gge/errors.hpp"
#include "gge/explorer.hpp"
#include "gge/tasks.hpp"

namespace gge {
namespace {

std::vector<std::string> entity_names(const KnowledgeGraph& kg, const EntitySet& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (EntityId e : s) out.push_back(kg.entity_name(e));
  return out;
}

// Relation names offered to SelectRelation, most-connected first when capped.
std::vector<std::string> offered_relations(const KnowledgeGraph& kg, const EntitySet& a, const EntitySet& b) {
  auto counts = kg.relation_counts_between(a, b);
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [rel, n] : counts) ranked.emplace_back(n, kg.relation_name(rel));
  if (ranked.size() > kMaxRelationCandidates) {
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    ranked.resize(kMaxRelationCandidates);
  }
  std::vector<std::string> names;
  for (auto& [n, name] : ranked) names.push_back(std::move(name));
  std::sort(names.begin(), names.end());
  return names;
}

struct RelationChoice {
  std::optional<RelationId> relation;
  PruningFailure failure = PruningFailure::EmptyRelationSet;
  std::string detail;
};

// Offers the relations joining `a` and `b` for `phrase` and records the
// SelectRelation outcome in the trace.
RelationChoice choose_relation(ExplorationEnv& env, const std::string& clue, std::size_t edge,
                               const EntitySet& a, const EntitySet& b, const std::string& phrase) {
  std::vector<std::string> offered = offered_relations(env.kg, a, b);
  env.record({.kind = TraceKind::RelationOffered, .round = env.round, .clue = clue, .edge = edge,
              .after = offered.size(), .candidates = a.size(), .items = offered, .detail = phrase});
  if (offered.empty()) return {std::nullopt, PruningFailure::EmptyRelationSet, "no relation joins the sets"};

  try {
    std::string chosen = tasks::select_relation(env.gateway, env.question_id, phrase, offered);
    env.record({.kind = TraceKind::RelationSelected, .round = env.round, .clue = clue, .edge = edge,
                .items = {chosen}});
    return {env.kg.find_relation(chosen), PruningFailure::EmptyRelationSet, {}};
  } catch (const ConstraintError& e) {
    env.record({.kind = TraceKind::RelationRejected, .round = env.round, .clue = clue, .edge = edge,
                .detail = e.what()});
    return {std::nullopt, PruningFailure::ConstraintViolation, e.what()};
  } catch (const TaskError& e) {
    env.record({.kind = TraceKind::RelationRejected, .round = env.round, .clue = clue, .edge = edge,
                .detail = e.what()});
    return {std::nullopt, PruningFailure::Unparseable, e.what()};
  }
}

void align_and_record(ExplorationEnv& env, ClueMapping& m) {
  AlignmentLog log;
  m = holistic_alignment(env.gg, env.kg, m, &log);
  for (const auto& [clue, removed] : log.removed) {
    env.record({.kind = TraceKind::HolisticRemoval, .round = env.round, .clue = clue.value,
                .after = removed.size(), .items = entity_names(env.kg, removed)});
  }
  for (const auto& clue : log.emptied) {
    env.record({.kind = TraceKind::ClueEmptied, .round = env.round, .clue = clue.value});
  }
}

std::string_view orientation_name(Orientation o) {
  return o == Orientation::TargetIsHead ? "target_is_head" : "target_is_tail";
}

}  // namespace

void ExplorationEnv::record(TraceEvent event) const {
  if (trace) trace->add(std::move(event));
}

PruningResult context_pruning(ExplorationEnv& env, const TargetContext& target, std::size_t primary,
                              const ClueMapping& m) {
  const EdgeContext& ctx = target.contexts.at(primary);
  const EntitySet& current = m.at(ctx.mapped);
  const EntitySet candidates = env.kg.candidate_entities(current);

  EntitySet valid = candidates;
  if (env.config.structural_alignment) {
    std::vector<ConnectivityConstraint> constraints;
    for (const auto& c : target.contexts) {
      if (!m.is_mapped(c.mapped)) continue;
      std::optional<RelationId> rel;
      if (auto g = m.edge_ground.find(c.edge); g != m.edge_ground.end()) rel = g->second;
      constraints.push_back({m.at(c.mapped), rel});
    }
    valid = structural_alignment_filter(env.kg, candidates, constraints);
  }
  env.record({.kind = TraceKind::StructuralFilter, .round = env.round, .clue = target.next.value,
              .edge = ctx.edge, .before = candidates.size(), .after = valid.size(),
              .detail = env.config.structural_alignment ? "" : "disabled"});

  const std::string phrase = env.config.context_phrases ? env.gg.phrase(ctx.edge) : env.gg.edges[ctx.edge].label;
  RelationChoice choice = choose_relation(env, target.next.value, ctx.edge, valid, current, phrase);
  if (!choice.relation) return PruningFailed{choice.failure, choice.detail};

  std::vector<EntityId> mapped;
  for (EntityId e : valid) {
    if (has_support(env.kg, e, current, choice.relation)) mapped.push_back(e);
  }
  if (mapped.empty()) return PruningFailed{PruningFailure::EmptyMapping, "no candidate carries the relation"};
  return PruningSuccess{*choice.relation, EntitySet::from_sorted(std::move(mapped))};
}

BranchDecision dynamic_branch_select(ExplorationEnv& env, const TargetContext& target, std::size_t failed,
                                     std::size_t alternative, ClueMapping& m) {
  const EdgeContext& cur = target.contexts.at(failed);
  const EdgeContext& alt = target.contexts.at(alternative);
  const std::string current_phrase = env.gg.phrase(cur.edge);
  const std::string related_phrase = env.gg.phrase(alt.edge);

  int pick = 0;
  std::string note;
  try {
    pick = tasks::select_branch(env.gateway, env.question_id, env.gg.statement, current_phrase, related_phrase);
  } catch (const TaskError& e) {
    note = e.what();
  }

  BranchDecision d = pick == 1 ? BranchDecision{BranchDecision::Choice::Related, cur.mapped}
                               : BranchDecision{BranchDecision::Choice::Current, alt.mapped};
  m.prune(d.pruned, env.gg);
  env.record({.kind = TraceKind::BranchDecision, .round = env.round, .clue = target.next.value,
              .items = {current_phrase, related_phrase},
              .detail = std::string(pick == 1 ? "related" : "current") + "; pruned " + d.pruned.value +
                        (note.empty() ? "" : "; " + note)});
  return d;
}

ClueMapping ground_residual_edges(ExplorationEnv& env, ClueMapping m) {
  for (std::size_t i = 0; i < env.gg.edges.size(); ++i) {
    const ClueEdge& e = env.gg.edges[i];
    if (m.edge_ground.contains(i) || m.ungrounded_edges.contains(i)) continue;
    if (!m.is_mapped(e.head) || !m.is_mapped(e.tail)) continue;

    const std::string phrase = env.config.context_phrases ? env.gg.phrase(i) : e.label;
    RelationChoice choice = choose_relation(env, e.head.value, i, m.at(e.head), m.at(e.tail), phrase);
    if (choice.relation) {
      m.edge_ground[i] = *choice.relation;
      env.record({.kind = TraceKind::EdgeGrounded, .round = env.round, .edge = i,
                  .items = {env.kg.relation_name(*choice.relation)}, .detail = "residual"});
    } else {
      m.ungrounded_edges.insert(i);
      env.record({.kind = TraceKind::EdgeUngrounded, .round = env.round, .edge = i, .detail = choice.detail});
    }
  }
  if (env.config.structural_alignment) align_and_record(env, m);
  return m;
}

ExplorationResult explore(const GuidanceGraph& gg, const KnowledgeGraph& kg, LlmGateway& gateway,
                          const std::string& question_id, const ExploreConfig& config) {
  ExplorationResult result{Fallback{FallbackReason::NoStartingPoint}, {}};
  ExplorationEnv env{gg, kg, gateway, question_id, config, &result.trace, 0};
  auto fallback = [&](FallbackReason reason) {
    env.record({.kind = TraceKind::Fallback, .round = env.round, .detail = std::string(to_string(reason))});
    result.outcome = Fallback{reason};
    return std::move(result);
  };

  try {
    ClueMapping m = find_starting_points(gg, kg);
    for (const auto& [clue, set] : m.node_map) {
      env.record({.kind = TraceKind::StartingPoint, .clue = clue.value, .after = set.size(),
                  .items = entity_names(kg, set)});
    }
    if (m.node_map.empty()) return fallback(FallbackReason::NoStartingPoint);

    // Only components holding a starting point can be grounded.
    std::vector<ClueId> required;
    for (const auto& component : connected_components(gg)) {
      bool seeded = std::any_of(component.begin(), component.end(),
                                [&](std::size_t n) { return m.is_mapped(gg.nodes[n].id); });
      for (std::size_t n : component) {
        if (seeded) {
          required.push_back(gg.nodes[n].id);
        } else {
          env.record({.kind = TraceKind::ComponentSkipped, .clue = gg.nodes[n].id.value,
                      .detail = "no starting point in this component"});
        }
      }
    }

    const std::size_t limit = config.max_rounds.value_or(2 * gg.nodes.size());
    std::optional<std::mt19937_64> rng;
    if (config.seed) rng.emplace(*config.seed);

    std::set<ClueId> exhausted;
    std::optional<std::pair<ClueId, ClueId>> forced;  // (target, clue) to explore from next
    bool hit_limit = false;

    while (auto target = select_target(gg, m, exhausted, rng ? &*rng : nullptr)) {
      if (env.round >= limit) {
        hit_limit = true;
        break;
      }
      ++env.round;

      std::size_t primary = primary_context(*target, m);
      if (forced && forced->first == target->next) {
        for (std::size_t i = 0; i < target->contexts.size(); ++i) {
          if (target->contexts[i].mapped == forced->second) primary = i;
        }
      }
      forced.reset();
      const EdgeContext& ctx = target->contexts[primary];
      env.record({.kind = TraceKind::TargetSelected, .round = env.round, .clue = target->next.value,
                  .edge = ctx.edge, .after = target->contexts.size(),
                  .items = {ctx.mapped.value}, .detail = std::string(orientation_name(ctx.orientation))});

      PruningResult pr = context_pruning(env, *target, primary, m);
      if (auto* ok = std::get_if<PruningSuccess>(&pr)) {
        m.node_map[target->next] = ok->mapped;
        m.edge_ground[ctx.edge] = ok->relation;
        env.record({.kind = TraceKind::EntitiesMapped, .round = env.round, .clue = target->next.value,
                    .edge = ctx.edge, .after = ok->mapped.size(), .items = entity_names(kg, ok->mapped),
                    .detail = kg.relation_name(ok->relation)});

        // Other contexts joined by exactly one relation are grounded without the LLM.
        for (std::size_t i = 0; i < target->contexts.size(); ++i) {
          const EdgeContext& other = target->contexts[i];
          if (i == primary || m.edge_ground.contains(other.edge) || !m.is_mapped(other.mapped)) continue;
          RelationSet rels = kg.relations_between(ok->mapped, m.at(other.mapped));
          if (rels.size() != 1) continue;
          m.edge_ground[other.edge] = rels[0];
          env.record({.kind = TraceKind::EdgeGrounded, .round = env.round, .clue = target->next.value,
                      .edge = other.edge, .items = {kg.relation_name(rels[0])}, .detail = "single relation"});
        }
        if (config.structural_alignment) align_and_record(env, m);
        continue;
      }

      const auto& failed = std::get<PruningFailed>(pr);
      env.record({.kind = TraceKind::PruningFailed, .round = env.round, .clue = target->next.value,
                  .edge = ctx.edge, .detail = std::string(to_string(failed.reason)) + ": " + failed.detail});

      std::optional<std::size_t> alternative;
      for (std::size_t i = 0; i < target->contexts.size(); ++i) {
        const auto& c = target->contexts[i];
        if (i == primary || c.mapped == ctx.mapped || !m.is_mapped(c.mapped)) continue;
        if (!alternative || std::pair(m.at(c.mapped).size(), c.mapped) <
                                std::pair(m.at(target->contexts[*alternative].mapped).size(),
                                          target->contexts[*alternative].mapped)) {
          alternative = i;
        }
      }
      if (config.branch_selection && alternative) {
        const ClueId related = target->contexts[*alternative].mapped;
        BranchDecision d = dynamic_branch_select(env, *target, primary, *alternative, m);
        if (d.choice == BranchDecision::Choice::Related) {
          forced = std::pair(target->next, related);
          continue;
        }
      }
      exhausted.insert(target->next);
    }

    auto all_required_mapped = [&] {
      return std::all_of(required.begin(), required.end(), [&](const ClueId& c) {
        return m.pruned_clues.contains(c) || m.is_mapped(c);
      });
    };
    if (!all_required_mapped()) {
      return fallback(hit_limit ? FallbackReason::RoundLimit : FallbackReason::PruningExhausted);
    }
    m = ground_residual_edges(env, std::move(m));
    if (!all_required_mapped()) return fallback(FallbackReason::PruningExhausted);

    std::vector<Triple> subgraph = assemble_subgraph(gg, kg, m);
    result.outcome = Grounded{std::move(subgraph), std::move(m)};
    return result;
  } catch (const ProviderError& e) {
    env.record({.kind = TraceKind::Fallback, .round = env.round, .detail = std::string("provider error: ") + e.what()});
    result.outcome = Fallback{FallbackReason::ConstructionFailed};
    return result;
  }
}

}  // namespace gge
