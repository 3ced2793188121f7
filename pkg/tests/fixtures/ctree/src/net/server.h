/* server.h */
#ifndef SRC_NET_SERVER_H
#define SRC_NET_SERVER_H

#include "proto.h"

#endif /* SRC_NET_SERVER_H */
