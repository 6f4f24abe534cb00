#include "treeq/enumerate.hpp"

#include <algorithm>

namespace treeq {

ExitIterator exits_of(const EnumIndexView& view, GateId union_gate) {
  if (view.circuit->type(union_gate) != GateType::kUnion)
    throw Error("exits_of: not a union gate");
  ExitIterator it;
  it.view_ = &view;
  it.it_ = view.forest->reach(view.switchboard->panel_id[union_gate]);
  return it;
}

Enumeration::Enumeration(const EnumIndexView& view) : view_(view) {
  generation_ = view_.generation ? *view_.generation : 0;
  const HybridCircuit& c = *view_.circuit;
  exhausted_ = true;
  if (c.has_secondary() && view_.omega->omega[c.secondary_output()]) empty_pending_ = true;
  if (c.output() != kNoGate && view_.omega->omega[c.output()]) exhausted_ = false;
  stats_ = {};
}

void Enumeration::push_frame(GateId g, int32_t parent) {
  visit();
  g = (*view_.delta)(g);  // skip the gated chain in one hop
  Frame f;
  f.gate = g;
  f.parent = parent;
  f.phase = 0;
  f.exit_cur = f.exit_stop = kNoVertex;
  switch (view_.circuit->type(g)) {
    case GateType::kSvar:
      f.kind = Kind::kSvar;
      break;
    case GateType::kTimes:
      if (view_.circuit->fan_in(g) != 2)
        throw Error("enumeration: nullary product in a homogenized circuit");
      f.kind = Kind::kTimes;
      break;
    case GateType::kUnion:
      f.kind = Kind::kUnion;
      break;
    default:
      throw Error("enumeration: unexpected gate kind");
  }
  stack_.push_back(f);
  stats_.max_stack_depth =
      std::max(stats_.max_stack_depth, static_cast<int64_t>(stack_.size()));
}

bool Enumeration::step() {
  enum class Sig { kEnter, kResume, kDone, kYield };
  Sig sig;
  int32_t at = -1;  // frame index a kDone/kYield signal addresses
  if (!opened_) {
    opened_ = true;
    push_frame(view_.circuit->output(), -1);
    sig = Sig::kEnter;
  } else {
    sig = Sig::kResume;
  }
  while (true) {
    switch (sig) {
      case Sig::kEnter: {
        int32_t idx = static_cast<int32_t>(stack_.size()) - 1;
        Frame& f = stack_[idx];
        visit();
        switch (f.kind) {
          case Kind::kSvar:
            current_.push_back(view_.circuit->svar_label(f.gate));
            f.phase = 1;
            at = idx;
            sig = Sig::kYield;
            break;
          case Kind::kTimes:
            f.phase = 0;
            push_frame(view_.circuit->inputs(f.gate)[0], idx);
            sig = Sig::kEnter;
            break;
          case Kind::kUnion: {
            VertexId v = view_.switchboard->panel_id[f.gate];
            f.exit_cur = view_.forest->first(v);
            f.exit_stop = view_.forest->last(v);
            if (f.exit_cur == kNoVertex) {  // empty under the current valuation
              at = f.parent;
              stack_.pop_back();
              sig = Sig::kDone;
            } else {
              push_frame(view_.switchboard->vertex_gate[f.exit_cur], idx);
              sig = Sig::kEnter;
            }
            break;
          }
        }
        break;
      }
      case Sig::kResume: {
        // the top frame is the svar that produced the last singleton
        Frame f = stack_.back();
        visit();
        current_.pop_back();
        stack_.pop_back();
        at = f.parent;
        sig = Sig::kDone;
        break;
      }
      case Sig::kDone: {
        if (at < 0) return false;
        Frame& f = stack_[at];
        visit();
        if (f.kind == Kind::kUnion) {
          if (f.exit_cur == f.exit_stop) {
            at = f.parent;
            stack_.pop_back();
            // sig stays kDone
          } else {
            f.exit_cur = view_.forest->next(f.exit_cur);
            push_frame(view_.switchboard->vertex_gate[f.exit_cur], at);
            sig = Sig::kEnter;
          }
        } else {  // times
          if (f.phase == 1) {
            f.phase = 0;  // right stream drained; advance the left one
            sig = Sig::kResume;
          } else {
            at = f.parent;
            stack_.pop_back();
            // left stream drained: the product is exhausted
          }
        }
        break;
      }
      case Sig::kYield: {
        // bubble up; the nearest product waiting on its left side intercepts
        int32_t idx = at;
        while (true) {
          int32_t p = stack_[idx].parent;
          if (p < 0) return true;
          Frame& f = stack_[p];
          if (f.kind == Kind::kTimes && f.phase == 0) {
            visit();
            f.phase = 1;
            push_frame(view_.circuit->inputs(f.gate)[1], p);
            sig = Sig::kEnter;
            break;
          }
          idx = p;
        }
        break;
      }
    }
  }
}

bool Enumeration::next(Assignment& out) {
  if (view_.generation && *view_.generation != generation_) throw StaleEnumeration();
  int64_t start = visits_;
  auto account = [&]() {
    stats_.total_visits = visits_;
    stats_.max_visits_per_output = std::max(stats_.max_visits_per_output, visits_ - start);
  };
  if (empty_pending_) {
    empty_pending_ = false;
    out.singletons.clear();
    ++stats_.outputs;
    account();
    return true;
  }
  if (exhausted_) return false;
  if (!step()) {
    exhausted_ = true;
    account();
    return false;
  }
  out.singletons.assign(current_.begin(), current_.end());
  std::sort(out.singletons.begin(), out.singletons.end());
  ++stats_.outputs;
  account();
  return true;
}

Enumeration open_enumeration(const EnumIndexView& view) { return Enumeration(view); }

}  // namespace treeq
