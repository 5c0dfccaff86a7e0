#pragma once

// The UAV fixtures: the real system (two IMUs), the attacker's one-IMU model
// of it, the GPS attacks, and the Environment / GCS context wraps. All
// alphabets are {0,1}; every machine has at most four states.

#include <string>
#include <vector>

#include "wdsec/attacks.hpp"
#include "wdsec/probes.hpp"

namespace wdsec::scenarios {

namespace boxes {
Box uav();       // (u1, u2 -> y)
Box sensors(const std::string& name);   // (l1, l2 -> l)
Box control(const std::string& name);   // (c1, c2 -> c)
Box dynamics(const std::string& name);  // (d1 -> d)
Box imu(const std::string& name);  // (a1, a2 -> i)
Box gps(const std::string& name);  // (g1, g2 -> g)
Box position(const std::string& name, std::size_t inputs);  // (p1 .. pn -> p)
Box environment();  // (pos -> gps)
Box gcs();          // (op -> cmd)
Box field();        // UAV inside its environment: (u1 -> y)
Box mission();      // UAV under ground control: (op, u2 -> y)
}  // namespace boxes

namespace machines {
MooreMachine imu(const std::string& name);  // s' = a1 and a2
MooreMachine gps(const std::string& name);  // s' = g1 and not g2
MooreMachine gps_hacked();                  // G'_H: gps with inverted readout
MooreMachine gps_symmetric();               // s' = g1 and g2
MooreMachine gps_backdoor();                // gps plus a dormant state
MooreMachine gps_backdoor2();               // gps_backdoor plus a second dormant state
MooreMachine gps_split();                   // gps with its "on" state split in two
MooreMachine position_view();               // P': s' = p1 xor p2
MooreMachine position_real();               // P: s' = (p1 and p2) xor p3
MooreMachine control(const std::string& name);   // s' = c1 xor c2
MooreMachine dynamics(const std::string& name);  // s' = d1
MooreMachine environment();                 // delay: senses the last position
MooreMachine environment_spoofed();         // always reports 1
MooreMachine gcs();                         // delay: relays the last order
MooreMachine gcs_social();                  // relays the negated order
MooreMachine constant_uav();                // one state, output 0
}  // namespace machines

namespace homs {
MachineHom backdoor();       // G' -> G'_B, inclusion
MachineHom backdoor_next();  // G'_B -> G'_B2, inclusion
MachineHom collapse();       // G'_split -> G', quotient
MachineHom not_a_hom();      // G' -> G'_H with the identity map (readout fails)
}  // namespace homs

/// L' <- I' ⊗ G' ⊗ P': I' and G' read (l1, l2), P' reads (i, g), L' outputs p.
Wiring sensors_view_wiring();
/// L <- IMU1 ⊗ IMU2 ⊗ G ⊗ P: both IMUs read (l1, l2), P reads (i1, i2, g).
Wiring sensors_real_wiring();
/// UAV <- L ⊗ C ⊗ D: L reads (u2, d), C reads (u1, l), D reads c, UAV outputs d.
Wiring top_wiring(const Box& l, const Box& c, const Box& d);
/// Attacker's architecture morphism I'G'P' -> IMU1 IMU2 G P duplicating the IMU.
Wiring imu_refinement();
/// Like imu_refinement but the GPS output is replaced by a constant.
Wiring gps_dropping_refinement();

Architecture uav_view_architecture();
Architecture uav_real_architecture();

CompositeSystem build_uav_real();
CompositeSystem build_uav_attacker_view();

/// h on G': h_in(g1, g2, g) = (g2, g1), h_out(g) = g.
attacks::RewireStep gps_swap_rewiring();
/// Constant feed on G': (g1, g2) -> (g1, 0).
attacks::RewireStep gps_constant_feed();
/// G' replaced by G'_H.
attacks::RewriteStep gps_firmware_rewrite();

/// Environment in feedback: its output feeds u2, the UAV output feeds it.
CompositeSystem wrap_environment(const CompositeSystem& uav,
                                 const MooreMachine& env = machines::environment());
/// A GCS machine drives u1; u2 stays free.
CompositeSystem wrap_gcs(const CompositeSystem& uav, const MooreMachine& station = machines::gcs());

enum class Context { environment, gcs };

/// Runs the unwrapped UAV composite next to the context machine (last
/// component of `wrapped`) and compares with the wrapped composite on every
/// input word of `depth`. Returns the first word where they disagree.
std::optional<Word> projection_mismatch(const CompositeSystem& wrapped, const CompositeSystem& uav,
                                        Context kind, std::size_t depth);

struct Scenario {
  std::string name;
  CompositeSystem real;
  CompositeSystem attacker_view;
  attacks::Correspondence correspondence;
  probes::KnowledgeBase kb;
  std::vector<probes::Test> battery;
  std::vector<attacks::AttackScript> scripts;
  std::vector<std::string> notes;

  const attacks::AttackScript& script(const std::string& name) const;
  bool operator==(const Scenario&) const = default;
};

/// Scripts: firmware, swap, combined, double-swap, constant-feed, backdoor,
/// backdoor-chain, backdoor-composed.
Scenario build_uav_scenario();

/// KB over the UAV box: a state-permuted copy of the real composite, the
/// one-IMU composite, symmetric-GPS and hacked-GPS variants, a constant machine.
probes::KnowledgeBase uav_knowledge_base();

/// Same tables with the states listed in reverse order.
MooreMachine reversed_states(const MooreMachine& m, const std::string& name);

/// Hom-mode rewrites shipped with the fixtures, each with the system it applies to.
struct HomCase {
  std::string name;
  CompositeSystem system;
  attacks::RewriteStep step;
};
std::vector<HomCase> hom_cases();

}  // namespace wdsec::scenarios
