#pragma once

#include <span>
#include <string_view>

#include "ledger/encoding.hpp"
#include "runtime/call_context.hpp"

namespace esp2cs::contracts {

using Handler = Bytes (*)(runtime::CallContext&, Decoder& args);

struct FunctionSpec {
  ContractId contract;
  std::string_view name;
  Handler handler;
  bool view = false;
  bool payable = false;
};

/// Every contract function, keyed by (contract, wire name).
std::span<const FunctionSpec> all_functions();
const FunctionSpec* find_function(ContractId contract, std::string_view name);

}  // namespace esp2cs::contracts
