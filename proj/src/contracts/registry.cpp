#include "contracts/registry.hpp"

#include <array>

#include "contracts/contracts.hpp"

namespace esp2cs::contracts {

namespace {
using C = ContractId;

constexpr std::array kFunctions{
    FunctionSpec{C::VehicularCommunication, "publishMessage", vc::publishMessage},
    FunctionSpec{C::VehicularCommunication, "readMessage", vc::readMessage, true},
    FunctionSpec{C::VehicularCommunication, "sendMessage", vc::sendMessage},
    FunctionSpec{C::VehicularCommunication, "getUnreadMessages", vc::getUnreadMessages, true},
    FunctionSpec{C::VehicularCommunication, "markAllAsRead", vc::markAllAsRead},
    FunctionSpec{C::PaymentManagement, "makePayment", pm::makePayment, false, true},
    FunctionSpec{C::PaymentManagement, "requestRefund", pm::requestRefund},
    FunctionSpec{C::PaymentManagement, "processRefund", pm::processRefund},
    FunctionSpec{C::PaymentManagement, "withdrawFunds", pm::withdrawFunds},
    FunctionSpec{C::ParkingSpaceManagement, "registerParkingSpace", psm::registerParkingSpace},
    FunctionSpec{C::ParkingSpaceManagement, "bookParkingSpace", psm::bookParkingSpace, false, true},
    FunctionSpec{C::ParkingSpaceManagement, "isAvailable", psm::isAvailable, true},
    FunctionSpec{C::ParkingSpaceManagement, "releaseParkingSpace", psm::releaseParkingSpace},
    FunctionSpec{C::ParkingSpaceManagement, "withdraw", psm::withdraw},
    FunctionSpec{C::AutomatedParkingPayments, "registerParkingSpace", app::registerParkingSpace},
    FunctionSpec{C::AutomatedParkingPayments, "startParking", app::startParking},
    FunctionSpec{C::AutomatedParkingPayments, "endParking", app::endParking},
    FunctionSpec{C::AutomatedParkingPayments, "calculateParkingFee", app::calculateParkingFee},
    FunctionSpec{C::AutomatedParkingPayments, "checkAmountDue", app::checkAmountDue},
};
}  // namespace

std::span<const FunctionSpec> all_functions() { return kFunctions; }

const FunctionSpec* find_function(ContractId contract, std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.contract == contract && f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace esp2cs::contracts
