#include <chrono>
#include <cstdio>
#include <string>

#include "nuchern/char_class.hpp"
#include "nuchern/nu_class.hpp"

using namespace nuchern;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int id, const std::string& name, bool pass, double secs,
            const std::string& details = "") {
  std::printf("criterion %d: %-4s %s (%.2fs)%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              secs, details.empty() ? "" : " -- ", details.c_str());
  if (!pass) ++failures;
}

/* 1: golden 2|1 chart labels */
void criterion1() {
  Timer tm;
  ChartAtlas a = build_atlas(2, 1);
  bool ok = a.label_text(1) == "A1 = (1, z1^(1), z2^(1) | e1^(1))" &&
            a.label_text(2) == "A2 = (z1^(2), 1, z2^(2) | e1^(2))" &&
            a.label_text(3) == "A3 = (z1^(3), z2^(3), 1 | e1^(3))" &&
            a.label_text(4) == "A4 = (z1^(4), z2^(4), nu(e1^(4)) | 1nu)";
  report(1, "atlas golden labels 2|1", ok && tm.seconds() < 1.0, tm.seconds());
}

/* 2: symbolic gluing identities on the 2|1 and 3|2 atlases */
void criterion2(const ChartAtlas& a21, const ChartAtlas& a32) {
  Timer tm;
  bool ok = true;
  for (const ChartAtlas* a : {&a21, &a32}) {
    for (int i = 1; i <= a->nchart(); ++i) {
      TransitionMap tii = transition(*a, i, i);
      for (const auto& [id, img] : tii.images) ok = ok && img == GrassmannElement::variable(id);
    }
    Report rep = verify_gluing(*a);
    ok = ok && rep.overall();
  }
  double s = tm.seconds();
  report(2, "gluing identities on 2|1 and 3|2", ok && s < 30.0, s);
}

/* 3: line cocycle triple products, exact plus numeric cross-check */
void criterion3(const ChartAtlas& a21, const ChartAtlas& a32) {
  Timer tm;
  Report r1 = verify_line_cocycle(a21, 100, 42);
  Report r2 = verify_line_cocycle(a32, 100, 42);
  report(3, "line cocycle triple products", r1.overall() && r2.overall(), tm.seconds());
}

/* 4: the headline coboundary value on cell (2,4,1) with default conventions */
void criterion4(const ChartAtlas& a) {
  Timer tm;
  const Window wins[2] = {Window::ZeroTwoPi, Window::MinusPiPi};
  std::mt19937_64 rng(42);
  bool value_ok = false, constant_ok = true, residual_ok = true;
  std::string cells;
  /* default conventions: 0-2pi windows, both mixed-parity arguments in the
     lower half-window (region 010) */
  const BranchRegion headline_region{0, 1, 0};
  for (int cj = 0; cj < 2; ++cj)
    for (int ck = 0; ck < 2; ++ck) {
      BranchAssignment br;
      br.win[4] = wins[cj];
      br.win[1] = wins[ck];
      bool constant = true;
      double worst = 0.0;
      std::map<BranchRegion, KernelElement> regions;
      int done = 0;
      /* keep sampling until every region has 100 points */
      while (done < 100) {
        auto pk = random_chart_point(a.chart(1), rng);
        double res = 0.0;
        BranchRegion reg{};
        KernelElement ke;
        try {
          ke = delta_eta(a, 2, 4, 1, br, pk, Lift::HeadlineCompatible, &res, &reg);
        } catch (const Error&) {
          continue;
        }
        ++done;
        worst = std::max(worst, res);
        auto [it, fresh] = regions.emplace(reg, ke);
        if (!fresh && (ke.p != it->second.p || ke.q != it->second.q)) constant = false;
      }
      if (cj == 0 && ck == 0) {
        auto it = regions.find(headline_region);
        value_ok = it != regions.end() && it->second.p == Rat(-1) / 2 && it->second.q == 0;
        for (const auto& [reg, ke] : regions)
          cells += " " + region_str(reg) + "=" + rat_pair_str(ke);
      }
      constant_ok = constant_ok && constant;
      residual_ok = residual_ok && worst <= 1e-9;
      cells += std::string(" [") + (cj ? "-pi-pi" : "0-2pi") + "," + (ck ? "-pi-pi" : "0-2pi") +
               "]" + (constant ? " constant" : " NON-CONSTANT");
    }
  report(4, "headline value (2,4,1) = (-1/2, 0), constant per branch region",
         value_ok && constant_ok && residual_ok, tm.seconds(), "default windows:" + cells);
}

/* 5: E'(L(h)) = h on >= 1000 draws */
void criterion5(const ChartAtlas& a) {
  Timer tm;
  Report rep = verify_right_inverse(a, 1000, 42, Lift::Strict);
  report(5, "right-inverse law, 1000 draws <= 1e-10", rep.overall(), tm.seconds(),
         rep.checks[0].details);
}

/* 6: kernel law over the 49 half-integer pairs */
void criterion6() {
  Timer tm;
  Report rep = verify_kernel_law();
  report(6, "kernel law, 49 half-integer cases", rep.overall(), tm.seconds());
}

/* 7: global 2-form identities with a formal 4-element partition */
void criterion7(const ChartAtlas& a) {
  Timer tm;
  PartitionFamily part = make_partition(*a.reg, a.nchart(), "ac_rho");
  int tau = a.reg->register_symbol("ac_tau", SymKind::Constant);
  Report rep = verify_global_two_form(a, part, tau);
  std::string bad;
  for (const auto& c : rep.checks)
    if (c.status == "fail") bad += c.name + "; ";
  report(7, "global 2-form: omega_i - omega_j = dL, R glues, dR = 0", rep.overall(), tm.seconds(),
         bad);
}

/* 8: curvature suite on the synthetic 2|1, 3-chart cocycle */
void criterion8() {
  Timer tm;
  Registry reg;
  Report rep = verify_curvature_suite(reg, 2, 1, 3, 42, 200);
  std::string bad;
  for (const auto& c : rep.checks)
    if (c.status == "fail") bad += c.name + "; ";
  double s = tm.seconds();
  report(8, "curvature suite on synthetic cocycle", rep.overall() && s < 60.0, s, bad);
}

/* 9: classical reduction plus the randomized property suites */
void criterion9(const ChartAtlas& a21) {
  Timer tm;
  bool ok = body_transition_check(a21).overall();

  Registry reg;
  int z1 = reg.register_symbol("ac_z1", SymKind::EvenCoord);
  auto [e1, ne1] = reg.register_pair("ac_e1", SymKind::OddCoord);
  auto [e2, ne2] = reg.register_pair("ac_e2", SymKind::OddCoord);
  (void)ne2;
  auto V = [](int id) { return GrassmannElement::variable(id); };
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> cd(-3, 3), pick(0, 4);
  auto rand_ge = [&]() {
    GrassmannElement x;
    for (int t = 0; t < 3; ++t) {
      RationalFunction c(cd(rng));
      if (pick(rng) < 2) c = c * RationalFunction::variable(z1);
      if (c.is_zero()) continue;
      GrassmannElement term = GrassmannElement::from_coeff(c);
      switch (pick(rng)) {
        case 0: break;
        case 1: term = term * V(e1); break;
        case 2: term = term * V(e2); break;
        case 3: term = term * V(e1) * V(e2); break;
        default: term = term * GrassmannElement::nu0_unit(); break;
      }
      x = x + term;
    }
    return x;
  };

  /* supercommutativity */
  for (int done = 0; done < 100;) {
    GrassmannElement x = rand_ge(), y = rand_ge();
    if (x.parity() < 0 || y.parity() < 0) continue;
    GrassmannElement rhs = (x.parity() == 1 && y.parity() == 1) ? -(y * x) : y * x;
    ok = ok && x * y == rhs;
    ++done;
  }
  /* nu^2 = id on even-linear combinations of single generators */
  NuContext ctx;
  ctx.mode = NuContext::Mode::Chart;
  ctx.chart_e1 = e1;
  ctx.chart_nue1 = ne1;
  for (int done = 0; done < 100;) {
    RationalFunction c = RationalFunction(cd(rng)) +
                         RationalFunction(cd(rng)) * RationalFunction::variable(z1);
    if (c.is_zero()) continue;
    GrassmannElement x = GrassmannElement::from_coeff(c) * V(done % 2 ? e1 : e2);
    ok = ok && nu_apply(nu_apply(x, ctx), ctx) == x;
    ++done;
  }
  /* d^2 = 0 */
  for (int t = 0; t < 100; ++t) ok = ok && exterior_d(d_ge(rand_ge())).is_zero();
  /* invert */
  for (int done = 0; done < 100;) {
    GrassmannElement x = rand_ge();
    GrassmannElement xi;
    try {
      xi = ge_invert(x);
    } catch (const Error&) {
      continue;
    }
    ok = ok && x * xi == GrassmannElement(1) && xi * x == GrassmannElement(1);
    ++done;
  }
  /* substitute is a morphism */
  for (int done = 0; done < 100;) {
    Substitution s;
    s[z1] = GrassmannElement(cd(rng) + 4) + V(e1) * V(e2) * RationalFunction(cd(rng));
    s[e1] = V(e1) * RationalFunction(cd(rng)) + V(e2) * RationalFunction(cd(rng));
    GrassmannElement x = rand_ge(), y = rand_ge();
    GrassmannElement sxy, sx, sy;
    try {
      sxy = substitute(x * y, s);
      sx = substitute(x, s);
      sy = substitute(y, s);
    } catch (const Error&) {
      continue;
    }
    ok = ok && sxy == sx * sy && substitute(x + y, s) == sx + sy;
    ++done;
  }
  report(9, "classical reduction and property suites", ok, tm.seconds());
}

}  // namespace

int main() {
  Timer total;
  criterion1();
  ChartAtlas a21 = build_atlas(2, 1);
  ChartAtlas a32 = build_atlas(3, 2);
  criterion2(a21, a32);
  criterion3(a21, a32);
  criterion4(a21);
  criterion5(a21);
  criterion6();
  criterion7(a21);
  criterion8();
  criterion9(a21);
  std::printf("total: %.2fs, %d criterion failure(s)\n", total.seconds(), failures);
  return failures == 0 ? 0 : 1;
}
