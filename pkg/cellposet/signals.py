"""Signals let applications observe long running computations without changing their results.

The `blinker`_ library provides the low-level signal implementation.

To use the signals you ``connect`` a receiver function to the signals you're interested in:

.. code-block:: python

    from cellposet.signals import stage_finished

    def stage_receiver(sender, certificate, passed):
        log.info("Stage %s finished, passed=%s", sender, passed)

    stage_finished.connect(stage_receiver)

See the `blinker`_ documentation for more details.

.. _blinker: https://pythonhosted.org/blinker/
"""

from blinker import signal

unit_cancelled = signal(
    "cellposet.unit_cancelled",
    doc="""Sent by ``minimize`` for every unit entry it cancels.

    :param: sender: The complex class being minimized.
    :param: int degree: The homological degree i of the differential holding the unit entry.
    :param: str row: The id of the cancelled generator of degree i - 1.
    :param: str col: The id of the cancelled generator of degree i.
    """,
)

basis_element_chosen = signal(
    "cellposet.basis_element_chosen",
    doc="""Sent by ``find_minimal_support_basis`` for every accepted element of degree 3 or more.

    :param: sender: The ``BasedBasis`` being built.
    :param: int degree: The homological degree of the element.
    :param: mdeg: The multidegree of the element.
    :param: tuple vector: The element in standard coordinates.
    :param: str stage: ``"standard"``, ``"stage1"`` or ``"stage2"``.
    """,
)

stage_started = signal(
    "cellposet.stage_started",
    doc="""Sent before a pipeline stage runs.

    :param: sender: The stage name.
    :param: certificate: The certificate being assembled.
    """,
)

stage_finished = signal(
    "cellposet.stage_finished",
    doc="""Sent after a pipeline stage ran to completion.

    :param: sender: The stage name.
    :param: certificate: The certificate being assembled.
    :param: bool passed: True if the stage verified everything it checks.
    """,
)

run_aborted = signal(
    "cellposet.run_aborted",
    doc="""Sent when a stage aborts the run.  No later stage runs after this signal.

    :param: sender: The stage name.
    :param: certificate: The certificate holding the abort.
    :param: error: The exception that aborted the run.
    """,
)
