"""Named example templates the CLI and scenario runner can mount.

Each entry is a function taking the model root variable and returning a
template; templates close over the model var and any helpers they need,
so plain functional abstraction composes views. DEFAULT_MODELS carries a
sensible starting model for each entry so scenarios may omit one.
"""

from .goals import (conde, eq, fresh, imembero, leftmosto, membero, pairo,
                    set_, tailo)
from .insertion import from_flat
from .template import reads_state
from .terms import cons, list_, nil


def counter(m):
    def increment(s, e):
        return set_(m, s.reify(m) + 1)

    return [{"tagName": "div", "className": "counter"},
            ["p", m],
            [{"tagName": "button", "onclick": reads_state(increment)}, "+"]]


def list_filter(m):
    def item_view(v):
        return fresh(lambda items, x: [eq(m, {"items": items}),
                                       membero(items, x),
                                       eq(v, ["li", x])])

    remove_lorem = fresh(lambda items, tail, rest: [
        eq(m, {"items": items}),
        tailo(items, tail),
        eq(tail, cons("lorem", rest)),
        set_(tail, rest)])

    return [{"tagName": "div"},
            [{"tagName": "ul", "className": "items"}, item_view],
            [{"tagName": "button", "className": "remove",
              "onclick": remove_lorem}, "remove lorem"]]


def treeview(m):
    def subtree(model):
        def view(v):
            return conde(
                [pairo(model).noto(), eq(v, ["li", model])],
                [pairo(model),
                 eq(v, ["li", ["ul", lambda sub: fresh(
                     lambda sm: [membero(model, sm), subtree(sm)(sub)])]])])
        return view

    return [{"tagName": "ul", "className": "tree"}, subtree(m)]


def membero_list(m):
    def item_view(v):
        return fresh(lambda items, x: [eq(m, {"items": items}),
                                       membero(items, x),
                                       eq(v, ["li", x])])

    insert_head = fresh(lambda items: [eq(m, {"items": items}),
                                       set_(items, cons("inserted", items))])

    return [{"tagName": "div"},
            [{"tagName": "ul", "className": "items"}, item_view],
            [{"tagName": "button", "className": "insert",
              "onclick": insert_head}, "insert"]]


def imembero_list(m):
    def item_view(v):
        return fresh(lambda items, x: [eq(m, {"items": items}),
                                       imembero(items, x),
                                       eq(v, ["li", x])])

    insert_head = fresh(lambda items, x: [eq(m, {"items": items}),
                                          leftmosto(items, x),
                                          set_(x, cons("inserted", x))])

    return [{"tagName": "div"},
            [{"tagName": "ul", "className": "items"}, item_view],
            [{"tagName": "button", "className": "insert",
              "onclick": insert_head}, "insert"]]


def todomvc(m):
    def new_todo(e, title):
        if e.key != "Enter":
            return None
        e.target.value = ""
        return fresh(lambda todos, x: [
            eq(m, {"todos": todos}), eq(x, nil), tailo(todos, x),
            set_(x, list_([{"title": title,
                            "done": False, "editing": False}]))])

    def items_template():
        def item_view(v):
            return fresh(
                lambda todos, todo, item, rest, title, done, editing,
                strikethru, active, completed: [
                    eq(m, {"todos": todos,
                           "active": active, "completed": completed}),
                    tailo(todos, item),
                    eq(item, cons(todo, rest)),
                    eq(todo, {"title": title,
                              "done": done, "editing": editing}),
                    conde([eq(done, True), eq(completed, True),
                           eq(strikethru, "completed")],
                          [eq(done, False), eq(active, True),
                           eq(strikethru, "")]),
                    eq(v, [{"tagName": "li", "className": strikethru},
                           row_view(item, rest, title, done, editing)])])
        return [{"tagName": "ul", "className": "todo-list"}, item_view]

    def row_view(item, rest, title, done, editing):
        def display_or_edit(v):
            return conde(
                [eq(editing, False),
                 eq(v, [{"tagName": "div", "className": "view",
                         "ondblclick": lambda e: set_(editing, True)},
                        [{"tagName": "input", "id": "check",
                          "className": "toggle", "type": "checkbox",
                          "checked": done,
                          "oninput": lambda e: set_(done, e.target.checked)}],
                        ["label", title],
                        [{"tagName": "button", "className": "destroy",
                          "onclick": set_(item, rest)}]])],
                [eq(editing, True),
                 eq(v, [{"tagName": "input", "className": "edit",
                         "value": title,
                         "onkeydown": lambda e: (e.target.blur()
                                                 if e.key == "Enter"
                                                 else None),
                         "onblur": lambda e, t: [set_(editing, False),
                                                 set_(title, t)]}])])
        return display_or_edit

    clear_completed = fresh(lambda todos, item, rest: [
        eq(m, {"todos": todos}), tailo(todos, item),
        eq(item, cons({"done": True}, rest)), set_(item, rest)])

    return [{"tagName": "section", "className": "todoapp"},
            [{"tagName": "header", "className": "header"},
             ["h1", "todos"],
             [{"tagName": "input", "className": "new-todo",
               "placeholder": "What needs to be done?", "autofocus": True,
               "onkeydown": new_todo}]],
            [{"tagName": "section", "className": "main"},
             [{"tagName": "input", "id": "toggle-all",
               "className": "toggle-all", "type": "checkbox"}],
             [{"tagName": "label", "for": "toggle-all"},
              "Mark all as complete"],
             items_template()],
            [{"tagName": "footer", "className": "footer"},
             [{"tagName": "ul", "className": "filters"},
              ["li", [{"tagName": "a", "className": "selected", "href": "#/",
                       "onclick": set_(m, {"active": True,
                                           "completed": True})}, "All"]],
              ["li", [{"tagName": "a", "href": "#/active",
                       "onclick": set_(m, {"active": True,
                                           "completed": False})}, "Active"]],
              ["li", [{"tagName": "a", "href": "#/completed",
                       "onclick": set_(m, {"active": False,
                                           "completed": True})},
                      "Completed"]]],
             [{"tagName": "button", "className": "clear-completed",
               "onclick": clear_completed}, "Clear completed"]]]


TEMPLATES = {
    "counter": counter,
    "list-filter": list_filter,
    "treeview": treeview,
    "membero-list": membero_list,
    "imembero-list": imembero_list,
    "todomvc": todomvc,
}

DEFAULT_MODELS = {
    "counter": 0,
    "list-filter": {"items": ["lorem", "ipsum", "lorem", "dolor"]},
    "treeview": ["lorem", ["ipsum", "dolor"], "sit"],
    "membero-list": {"items": ["lorem", "ipsum", "dolor"]},
    "imembero-list": {"items": ["lorem", "ipsum", "dolor"]},
    "todomvc": {"todos": [], "active": True, "completed": True},
}


def prepare_model(name, model):
    """Adapt a plain JSON model to what a template expects.

    Insertion-tree templates take their items as a balanced binary tree
    rather than a cons list, so scenarios can still write flat arrays.
    """
    if name == "imembero-list" and isinstance(model, dict) \
            and isinstance(model.get("items"), list):
        model = dict(model)
        model["items"] = from_flat(model["items"])
    return model
