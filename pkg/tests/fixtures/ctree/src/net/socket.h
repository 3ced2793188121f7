/* socket.h */
#ifndef SRC_NET_SOCKET_H
#define SRC_NET_SOCKET_H

#include "config.h"

#endif /* SRC_NET_SOCKET_H */
