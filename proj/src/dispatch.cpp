#include <atomic>
#include <cstdlib>
#include <string>

#include "ickit/error.hpp"
#include "kernels_internal.hpp"

namespace ickit::kernels {

namespace {

[[maybe_unused]] bool cpu_has_avx2() noexcept {
#if defined(ICKIT_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const char* env = std::getenv("ICKIT_ISA");
    const std::string wanted = env ? env : "";
    if (wanted == "scalar") return &detail::kScalarTable;
    if (const KernelTable* t = table_for(Isa::avx2)) return t;
    return &detail::kScalarTable;
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

const KernelTable& scalar() noexcept { return detail::kScalarTable; }

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return &detail::kScalarTable;
    case Isa::avx2:
#if defined(ICKIT_HAVE_AVX2)
        if (cpu_has_avx2()) return &detail::kAvx2Table;
#endif
        return nullptr;
    }
    return nullptr;
}

bool isa_supported(Isa isa) noexcept { return table_for(isa) != nullptr; }

void select_isa(Isa isa) {
    const KernelTable* t = table_for(isa);
    if (!t) throw DomainError("instruction set not available: " + std::string(isa_name(isa)));
    current().store(t, std::memory_order_release);
}

} // namespace ickit::kernels
