// Timing comparison of the serial reference kernels against the OpenMP
// versions, on inputs big enough to matter.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cambrian/cambrian.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/fan.hpp"
#include "cambrian/kernels.hpp"

using namespace cambrian;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-34s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel kernels run serially\n");
#endif
  std::printf("%-34s %13s %13s\n", "kernel", "serial", "parallel");

  {
    WeakOrder f4 = WeakOrder::build(CoxeterSystem::build("F4"));
    kern::TablesResult s, p;
    double ts = time_ms([&] { s = kern::meet_join_tables_serial(f4.lattice(), f4.reach); });
    double tp = time_ms([&] { p = kern::meet_join_tables_parallel(f4.lattice(), f4.reach); });
    row("meet/join tables (F4, 1152)", ts, tp,
        s.tables.meet == p.tables.meet && s.tables.join == p.tables.join);
  }

  {
    CoxeterSystem h4 = CoxeterSystem::build("H4");
    EnumeratedGroup g = enumerate_group(h4);
    CoxeterElement c = coxeter_element_from_word(h4, {0, 1, 2, 3});
    auto pred = [&](int v) { return is_sortable(h4, g.elements[v], c); };
    std::vector<std::uint8_t> s, p;
    double ts = time_ms([&] { s = kern::filter_serial(static_cast<int>(g.order()), pred); });
    double tp = time_ms([&] { p = kern::filter_parallel(static_cast<int>(g.order()), pred); });
    int count = 0;
    for (auto f : s) count += f;
    row("sortable filter (H4, 14400)", ts, tp, s == p);
    std::printf("    (H4 has %d sortable elements)\n", count);
  }

  {
    WeakOrder b3 = WeakOrder::build(CoxeterSystem::build("B3"));
    Fan fan = coxeter_fan(b3);
    kern::ConeSet cs = fan.cone_set();
    kern::SphereSamples s, p;
    double ts =
        time_ms([&] { s = kern::draw_valid_samples_serial(3, 100000, 0, 1e-9, {&cs}); });
    double tp =
        time_ms([&] { p = kern::draw_valid_samples_parallel(3, 100000, 0, 1e-9, {&cs}); });
    row("sample validation (B3, 100k)", ts, tp, s.pts == p.pts);

    kern::Ownership os, op;
    double cs_ms = time_ms([&] { os = kern::classify_serial(cs, s, 1e-9); });
    double cp_ms = time_ms([&] { op = kern::classify_parallel(cs, s, 1e-9); });
    row("cone classification (B3, 100k)", cs_ms, cp_ms,
        os.owner == op.owner && os.multiplicity == op.multiplicity);
  }

  {
    WeakOrder a4 = WeakOrder::build(CoxeterSystem::build("A4"));
    CoxeterElement c = coxeter_element_from_word(a4.sys(), {0, 1, 2, 3});
    Congruence theta = cambrian_congruence(a4, c);
    HasseLattice quot = quotient(a4.lattice(), theta);
    Reachability rq(quot);
    auto tabs = kern::meet_join_tables(quot, rq);
    std::vector<int> f(a4.lattice().n);
    for (int v = 0; v < a4.lattice().n; ++v) f[v] = theta.class_of[v];
    kern::PairFailure s, p;
    double ts = time_ms([&] { s = kern::hom_check_serial(f, a4.lattice(), a4.reach, tabs.tables); });
    double tp =
        time_ms([&] { p = kern::hom_check_parallel(f, a4.lattice(), a4.reach, tabs.tables); });
    row("homomorphism check (A4, 120^2)", ts, tp, s.ok == p.ok);
  }

  return 0;
}
