import queue


def cancel_items_in_queue(que: queue.Queue) -> None:
    """
    Cancel the futures of every task still waiting in the queue.

    Args:
        que (queue.Queue): queue of task dictionaries
    """
    while True:
        try:
            item = que.get_nowait()
        except queue.Empty:
            break
        if isinstance(item, dict) and "future" in item.keys():
            item["future"].cancel()
        que.task_done()
