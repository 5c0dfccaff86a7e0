#include "wdsec/algebra.hpp"

namespace wdsec {
namespace {

void check_alignment(const Wiring& w, const std::vector<const MooreMachine*>& ms) {
  if (w.outer.size() != 1)
    throw CompositionError("the algebra needs a wiring with one outer box, got " +
                           std::to_string(w.outer.size()));
  if (ms.size() != w.inner.size())
    throw CompositionError("wiring has " + std::to_string(w.inner.size()) + " inner boxes but " +
                           std::to_string(ms.size()) + " machines were given");
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (!same_interface(ms[i]->box(), w.inner[i]))
      throw CompositionError("machine '" + ms[i]->name() + "' on " + describe(ms[i]->box()) +
                             " does not fit inner box " + std::to_string(i) + " " +
                             describe(w.inner[i]));
}

std::vector<std::size_t> strides(const std::vector<const MooreMachine*>& ms) {
  std::vector<std::size_t> s(ms.size(), 1);
  for (std::size_t i = ms.size(); i-- > 1;) s[i - 1] = s[i] * ms[i]->state_count();
  return s;
}

}  // namespace

MooreMachine apply_algebra(const Wiring& w, const std::vector<MooreMachine>& machines,
                           const std::string& name) {
  std::vector<const MooreMachine*> ms;
  for (const auto& m : machines) ms.push_back(&m);
  check_alignment(w, ms);
  validate_wiring(w);

  const auto& outer = w.outer[0];
  const auto stride = strides(ms);
  std::size_t total = 1;
  for (const auto* m : ms) total *= m->state_count();

  std::vector<std::string> names(total);
  std::vector<std::size_t> update(total * outer.in_count());
  std::vector<std::size_t> readout(total);
  std::size_t init = 0;
  for (std::size_t i = 0; i < ms.size(); ++i) init += ms[i]->init() * stride[i];

  std::vector<std::size_t> local(ms.size());
  BoxValues reads(ms.size());
  BoxValues outer_in(1);
  for (std::size_t s = 0; s < total; ++s) {
    std::string label = "(";
    for (std::size_t i = 0; i < ms.size(); ++i) {
      local[i] = (s / stride[i]) % ms[i]->state_count();
      reads[i] = ms[i]->readout(local[i]);
      label += (i ? "," : "") + ms[i]->states()[local[i]];
    }
    names[s] = label + ")";
    readout[s] = encode(outer.out, eval_out(w, reads)[0]);
    for (std::size_t y = 0; y < outer.in_count(); ++y) {
      outer_in[0] = decode(outer.in, y);
      const auto feed = eval(w, reads, outer_in).inner_in;
      std::size_t next = 0;
      for (std::size_t i = 0; i < ms.size(); ++i)
        next += ms[i]->next(local[i], encode(ms[i]->box().in, feed[i])) * stride[i];
      update[s * outer.in_count() + y] = next;
    }
  }
  return MooreMachine(name.empty() ? outer.name : name, outer, std::move(names), init,
                      std::move(update), std::move(readout));
}

MachineHom lift_hom(const Wiring& w, const std::vector<MachineHom>& homs) {
  std::vector<MooreMachine> sources, targets;
  for (const auto& h : homs) {
    require_hom(h);
    sources.push_back(h.source);
    targets.push_back(h.target);
  }
  MachineHom lifted{"F(w)(", apply_algebra(w, sources), apply_algebra(w, targets), {}};
  for (std::size_t i = 0; i < homs.size(); ++i) lifted.name += (i ? "," : "") + homs[i].name;
  lifted.name += ")";

  std::vector<const MooreMachine*> src_ptr, tgt_ptr;
  for (const auto& m : sources) src_ptr.push_back(&m);
  for (const auto& m : targets) tgt_ptr.push_back(&m);
  const auto src_stride = strides(src_ptr);
  const auto tgt_stride = strides(tgt_ptr);
  lifted.state_map.resize(lifted.source.state_count());
  for (std::size_t s = 0; s < lifted.state_map.size(); ++s) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < homs.size(); ++i) {
      const auto local = (s / src_stride[i]) % sources[i].state_count();
      t += homs[i].state_map[local] * tgt_stride[i];
    }
    lifted.state_map[s] = t;
  }
  if (auto v = check_hom(lifted))
    throw InvariantError("lifted morphism fails its " + v->kind + " condition: " + v->message);
  return lifted;
}

std::size_t CompositeSystem::slot(const std::string& box_name) const {
  for (std::size_t i = 0; i < wiring.inner.size(); ++i)
    if (wiring.inner[i].name == box_name) return i;
  return npos;
}

void validate_system(const CompositeSystem& sys) {
  validate_wiring(sys.wiring);
  std::vector<const MooreMachine*> ms;
  for (const auto& m : sys.components) ms.push_back(&m);
  check_alignment(sys.wiring, ms);
}

MooreMachine composite(const CompositeSystem& sys) {
  return apply_algebra(sys.wiring, sys.components, sys.name);
}

CompositeSystem from_architecture(std::string name, const Architecture& arch,
                                  std::vector<MooreMachine> leaf_machines) {
  validate_architecture(arch);
  CompositeSystem sys{std::move(name), flatten(arch), std::move(leaf_machines)};
  validate_system(sys);
  return sys;
}

}  // namespace wdsec
